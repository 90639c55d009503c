#include "ttvsr/tokenize.hpp"

#include <cmath>

#include "ttvsr/tensor_ops.hpp"

namespace ttvsr {

TokenGrid cross_scale_tokenize(const FeatureMap& f, std::span<const int> kernels,
                               int base) {
    if (base < 1 || f.height() % base != 0 || f.width() % base != 0) {
        throw SizeError("cross_scale_tokenize: base " + std::to_string(base) +
                        " does not divide " + std::to_string(f.height()) + "x" +
                        std::to_string(f.width()));
    }
    if (kernels.empty()) throw PreconditionError("cross_scale_tokenize: no kernels");
    for (int k : kernels) {
        if (k < base) {
            throw PreconditionError("cross_scale_tokenize: kernel " + std::to_string(k) +
                                    " smaller than base " + std::to_string(base));
        }
    }

    const int gh = f.height() / base;
    const int gw = f.width() / base;
    const int token_len = f.channels() * base * base;
    TokenGrid tg(gh, gw, token_len, base, base);
    const double scale_w = 1.0 / static_cast<double>(kernels.size());

    std::vector<double> acc(static_cast<std::size_t>(token_len));
    for (int gi = 0; gi < gh; ++gi) {
        for (int gj = 0; gj < gw; ++gj) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (int k : kernels) {
                const int pad = (k - base + 1) / 2;
                const int i0 = gi * base - pad;
                const int j0 = gj * base - pad;
                std::size_t idx = 0;
                for (int c = 0; c < f.channels(); ++c) {
                    for (int bi = 0; bi < base; ++bi) {
                        const int r0 = bi * k / base;
                        const int r1 = (bi + 1) * k / base;
                        for (int bj = 0; bj < base; ++bj, ++idx) {
                            const int c0 = bj * k / base;
                            const int c1 = (bj + 1) * k / base;
                            double bin = 0.0;
                            for (int r = r0; r < r1; ++r) {
                                for (int cc = c0; cc < c1; ++cc) {
                                    bin += f.at_clamped(c, i0 + r, j0 + cc);
                                }
                            }
                            acc[idx] += bin / ((r1 - r0) * (c1 - c0));
                        }
                    }
                }
            }
            auto tok = tg.token(gi, gj);
            for (int i = 0; i < token_len; ++i) {
                tok[i] = static_cast<float>(acc[static_cast<std::size_t>(i)] * scale_w);
            }
        }
    }
    return tg;
}

FeatureMap cross_scale_map(const FeatureMap& f, std::span<const int> kernels, int base) {
    const TokenGrid tg = cross_scale_tokenize(f, kernels, base);
    return fold(tg, f.height(), f.width(), base, base, 0);
}

std::vector<std::vector<float>> tokens_from_map_at(const FeatureMap& f,
                                                   std::span<const Coord> centers,
                                                   int kernel) {
    if (kernel < 1) throw PreconditionError("tokens_from_map_at: kernel must be >= 1");
    std::vector<std::vector<float>> out;
    out.reserve(centers.size());
    const float off = (kernel - 1) / 2.0f;
    for (const Coord& center : centers) {
        std::vector<float> tok(static_cast<std::size_t>(f.channels()) * kernel * kernel);
        std::size_t idx = 0;
        for (int c = 0; c < f.channels(); ++c) {
            auto plane = f.channel(c);
            for (int ki = 0; ki < kernel; ++ki) {
                for (int kj = 0; kj < kernel; ++kj, ++idx) {
                    const Coord at{center.row + ki - off, center.col + kj - off};
                    tok[idx] = bilinear_sample_grid(plane, f.height(), f.width(), at);
                }
            }
        }
        out.push_back(std::move(tok));
    }
    return out;
}

} // namespace ttvsr

#include "ttvsr/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "ttvsr/parallel.hpp"
#include "ttvsr/tensor_ops.hpp"

namespace ttvsr {

Flow::Flow(int height, int width) : height_(height), width_(width) {
    if (height < 0 || width < 0) throw SizeError("Flow dims must be non-negative");
    d_row_.assign(static_cast<std::size_t>(height) * width, 0.0f);
    d_col_.assign(static_cast<std::size_t>(height) * width, 0.0f);
}

Flow::Flow(int height, int width, std::vector<float> d_row, std::vector<float> d_col)
    : height_(height), width_(width), d_row_(std::move(d_row)), d_col_(std::move(d_col)) {
    const std::size_t expect = static_cast<std::size_t>(height) * width;
    if (d_row_.size() != expect || d_col_.size() != expect) {
        throw SizeError("Flow component length mismatch for " + std::to_string(height) +
                        "x" + std::to_string(width));
    }
    check();
}

Coord Flow::sample(Coord at) const {
    return {bilinear_sample_grid(d_row_, height_, width_, at),
            bilinear_sample_grid(d_col_, height_, width_, at)};
}

void Flow::check() const {
    const float bound = static_cast<float>(std::max(height_, width_));
    for (std::size_t k = 0; k < d_row_.size(); ++k) {
        if (!std::isfinite(d_row_[k]) || !std::isfinite(d_col_[k]) ||
            std::abs(d_row_[k]) > bound || std::abs(d_col_[k]) > bound) {
            throw PreconditionError("Flow displacement out of sanity bound at index " +
                                    std::to_string(k));
        }
    }
}

Flow block_match_flow(const FeatureMap& cur, const FeatureMap& prev, int patch,
                      int radius) {
    if (cur.channels() != prev.channels() || cur.height() != prev.height() ||
        cur.width() != prev.width()) {
        throw SizeError("block_match_flow: frame shapes differ");
    }
    if (patch < 1 || patch % 2 == 0) {
        throw SizeError("block_match_flow: patch must be odd and >= 1, got " +
                        std::to_string(patch));
    }
    if (radius < 0) throw SizeError("block_match_flow: radius must be >= 0");

    const int h = cur.height();
    const int w = cur.width();
    const int half = patch / 2;
    Flow out(h, w);
    parallel_for(0, h, [&](int i) {
        for (int j = 0; j < w; ++j) {
            double best = 0.0;
            int best_dr = 0;
            int best_dc = 0;
            bool first = true;
            for (int dr = -radius; dr <= radius; ++dr) {
                for (int dc = -radius; dc <= radius; ++dc) {
                    double sad = 0.0;
                    for (int c = 0; c < cur.channels(); ++c) {
                        for (int oi = -half; oi <= half; ++oi) {
                            for (int oj = -half; oj <= half; ++oj) {
                                const float a = cur.at_clamped(c, i + oi, j + oj);
                                const float b =
                                    prev.at_clamped(c, i + dr + oi, j + dc + oj);
                                sad += std::abs(a - b);
                            }
                        }
                    }
                    const long mag = static_cast<long>(dr) * dr + static_cast<long>(dc) * dc;
                    const long best_mag = static_cast<long>(best_dr) * best_dr +
                                          static_cast<long>(best_dc) * best_dc;
                    const bool better =
                        first || sad < best ||
                        (sad == best && (mag < best_mag ||
                                         (mag == best_mag &&
                                          (dr < best_dr || (dr == best_dr && dc < best_dc)))));
                    if (better) {
                        best = sad;
                        best_dr = dr;
                        best_dc = dc;
                        first = false;
                    }
                }
            }
            out.d_row(i, j) = static_cast<float>(best_dr);
            out.d_col(i, j) = static_cast<float>(best_dc);
        }
    });
    return out;
}

Flow pool_flow(const Flow& flow, int factor) {
    if (factor < 1 || flow.height() % factor != 0 || flow.width() % factor != 0) {
        throw SizeError("pool_flow: dims " + std::to_string(flow.height()) + "x" +
                        std::to_string(flow.width()) + " not divisible by factor " +
                        std::to_string(factor));
    }
    const int oh = flow.height() / factor;
    const int ow = flow.width() / factor;
    Flow out(oh, ow);
    const double inv = 1.0 / (static_cast<double>(factor) * factor * factor);
    for (int i = 0; i < oh; ++i) {
        for (int j = 0; j < ow; ++j) {
            double sr = 0.0, sc = 0.0;
            for (int ki = 0; ki < factor; ++ki) {
                for (int kj = 0; kj < factor; ++kj) {
                    sr += flow.d_row(i * factor + ki, j * factor + kj);
                    sc += flow.d_col(i * factor + ki, j * factor + kj);
                }
            }
            out.d_row(i, j) = static_cast<float>(sr * inv);
            out.d_col(i, j) = static_cast<float>(sc * inv);
        }
    }
    return out;
}

namespace {

constexpr char kFloMagic[4] = {'P', 'I', 'E', 'H'};

template <typename T>
void write_le(std::ofstream& os, T v) {
    static_assert(sizeof(T) == 4);
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& is, const char* field) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) {
        throw FormatError(std::string(".flo truncated reading ") + field);
    }
    return v;
}

} // namespace

void write_flo(const Flow& flow, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("cannot open " + path.string() + " for writing");
    os.write(kFloMagic, 4);
    write_le<std::int32_t>(os, flow.width());
    write_le<std::int32_t>(os, flow.height());
    for (int i = 0; i < flow.height(); ++i) {
        for (int j = 0; j < flow.width(); ++j) {
            write_le<float>(os, flow.d_col(i, j));
            write_le<float>(os, flow.d_row(i, j));
        }
    }
    if (!os) throw FormatError("write failed for " + path.string());
}

Flow read_flo(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open " + path.string());
    char magic[4];
    if (!is.read(magic, 4)) throw FormatError(".flo truncated reading magic");
    if (std::memcmp(magic, kFloMagic, 4) != 0) throw FormatError(".flo bad magic");
    const auto w = read_le<std::int32_t>(is, "width");
    const auto h = read_le<std::int32_t>(is, "height");
    if (w <= 0) throw FormatError(".flo width must be positive, got " + std::to_string(w));
    if (h <= 0) throw FormatError(".flo height must be positive, got " + std::to_string(h));
    Flow flow(h, w);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            flow.d_col(i, j) = read_le<float>(is, "data");
            flow.d_row(i, j) = read_le<float>(is, "data");
        }
    }
    flow.check();
    return flow;
}

} // namespace ttvsr

#include "ttvsr/tensor_ops.hpp"

#include <algorithm>
#include <cmath>

namespace ttvsr {

namespace {

int grid_cells(int extent, int kernel, int stride, int pad) {
    const int padded = extent + 2 * pad;
    if (padded < kernel) {
        throw SizeError("unfold: padded extent " + std::to_string(padded) +
                        " smaller than kernel " + std::to_string(kernel));
    }
    return (padded - kernel) / stride + 1;
}

void check_window_args(int kernel, int stride, int pad) {
    if (kernel < 1 || stride < 1 || pad < 0) {
        throw SizeError("invalid window args kernel=" + std::to_string(kernel) +
                        " stride=" + std::to_string(stride) + " pad=" + std::to_string(pad));
    }
}

// Catmull-Rom cubic, a = -0.5.
double cubic_weight(double x) {
    x = std::abs(x);
    if (x < 1.0) return (1.5 * x - 2.5) * x * x + 1.0;
    if (x < 2.0) return ((-0.5 * x + 2.5) * x - 4.0) * x + 2.0;
    return 0.0;
}

// One separable resize pass along the leading axis of an n0 x n1 plane.
void resize_axis(const std::vector<double>& src, int n0, int n1, int out_n0,
                 double scale, std::vector<double>& dst) {
    dst.assign(static_cast<std::size_t>(out_n0) * n1, 0.0);
    const double kscale = std::min(scale, 1.0);
    const double support = 2.0 / kscale;
    for (int i = 0; i < out_n0; ++i) {
        const double center = (i + 0.5) / scale - 0.5;
        const int lo = static_cast<int>(std::ceil(center - support));
        const int hi = static_cast<int>(std::floor(center + support));
        double wsum = 0.0;
        for (int j = lo; j <= hi; ++j) wsum += cubic_weight((j - center) * kscale);
        for (int k = 0; k < n1; ++k) {
            double acc = 0.0;
            for (int j = lo; j <= hi; ++j) {
                const double w = cubic_weight((j - center) * kscale);
                const int sj = std::clamp(j, 0, n0 - 1);
                acc += w * src[static_cast<std::size_t>(sj) * n1 + k];
            }
            dst[static_cast<std::size_t>(i) * n1 + k] = acc / wsum;
        }
    }
}

} // namespace

TokenGrid unfold(const FeatureMap& f, int kernel, int stride, int zero_pad) {
    check_window_args(kernel, stride, zero_pad);
    const int gh = grid_cells(f.height(), kernel, stride, zero_pad);
    const int gw = grid_cells(f.width(), kernel, stride, zero_pad);
    const int token_len = f.channels() * kernel * kernel;
    TokenGrid tg(gh, gw, token_len, kernel, stride);
    for (int gi = 0; gi < gh; ++gi) {
        for (int gj = 0; gj < gw; ++gj) {
            auto tok = tg.token(gi, gj);
            std::size_t idx = 0;
            const int i0 = gi * stride - zero_pad;
            const int j0 = gj * stride - zero_pad;
            for (int c = 0; c < f.channels(); ++c) {
                for (int ki = 0; ki < kernel; ++ki) {
                    for (int kj = 0; kj < kernel; ++kj, ++idx) {
                        const int i = i0 + ki;
                        const int j = j0 + kj;
                        const bool inside =
                            i >= 0 && i < f.height() && j >= 0 && j < f.width();
                        tok[idx] = inside ? f.at(c, i, j) : 0.0f;
                    }
                }
            }
        }
    }
    return tg;
}

FeatureMap fold(const TokenGrid& tg, int out_h, int out_w, int kernel, int stride,
                int zero_pad) {
    check_window_args(kernel, stride, zero_pad);
    if (tg.token_len() % (kernel * kernel) != 0) {
        throw SizeError("fold: token_len " + std::to_string(tg.token_len()) +
                        " not a multiple of kernel^2 = " + std::to_string(kernel * kernel));
    }
    const int channels = tg.token_len() / (kernel * kernel);
    const int gh = grid_cells(out_h, kernel, stride, zero_pad);
    const int gw = grid_cells(out_w, kernel, stride, zero_pad);
    if (gh != tg.grid_h() || gw != tg.grid_w()) {
        throw SizeError("fold: token grid " + std::to_string(tg.grid_h()) + "x" +
                        std::to_string(tg.grid_w()) + " inconsistent with output " +
                        std::to_string(out_h) + "x" + std::to_string(out_w) +
                        " (expects " + std::to_string(gh) + "x" + std::to_string(gw) + ")");
    }
    FeatureMap out(channels, out_h, out_w);
    for (int gi = 0; gi < gh; ++gi) {
        for (int gj = 0; gj < gw; ++gj) {
            auto tok = tg.token(gi, gj);
            std::size_t idx = 0;
            const int i0 = gi * stride - zero_pad;
            const int j0 = gj * stride - zero_pad;
            for (int c = 0; c < channels; ++c) {
                for (int ki = 0; ki < kernel; ++ki) {
                    for (int kj = 0; kj < kernel; ++kj, ++idx) {
                        const int i = i0 + ki;
                        const int j = j0 + kj;
                        if (i >= 0 && i < out_h && j >= 0 && j < out_w) {
                            out.at(c, i, j) += tok[idx];
                        }
                    }
                }
            }
        }
    }
    out.check_finite();
    return out;
}

FeatureMap avg_pool(const FeatureMap& f, int kernel) {
    if (kernel < 1 || f.height() % kernel != 0 || f.width() % kernel != 0) {
        throw SizeError("avg_pool: dims " + std::to_string(f.height()) + "x" +
                        std::to_string(f.width()) + " not divisible by kernel " +
                        std::to_string(kernel));
    }
    const int oh = f.height() / kernel;
    const int ow = f.width() / kernel;
    FeatureMap out(f.channels(), oh, ow);
    const double inv = 1.0 / (static_cast<double>(kernel) * kernel);
    for (int c = 0; c < f.channels(); ++c) {
        for (int i = 0; i < oh; ++i) {
            for (int j = 0; j < ow; ++j) {
                double acc = 0.0;
                for (int ki = 0; ki < kernel; ++ki) {
                    for (int kj = 0; kj < kernel; ++kj) {
                        acc += f.at(c, i * kernel + ki, j * kernel + kj);
                    }
                }
                out.at(c, i, j) = static_cast<float>(acc * inv);
            }
        }
    }
    return out;
}

float bilinear_sample_grid(std::span<const float> grid, int h, int w, Coord at) {
    const Coord p = clamp_coord(at, h, w);
    const int i0 = std::min(static_cast<int>(std::floor(p.row)), h - 1);
    const int j0 = std::min(static_cast<int>(std::floor(p.col)), w - 1);
    const int i1 = std::min(i0 + 1, h - 1);
    const int j1 = std::min(j0 + 1, w - 1);
    const double fr = p.row - i0;
    const double fc = p.col - j0;
    const double v00 = grid[static_cast<std::size_t>(i0) * w + j0];
    const double v01 = grid[static_cast<std::size_t>(i0) * w + j1];
    const double v10 = grid[static_cast<std::size_t>(i1) * w + j0];
    const double v11 = grid[static_cast<std::size_t>(i1) * w + j1];
    return static_cast<float>((1.0 - fr) * ((1.0 - fc) * v00 + fc * v01) +
                              fr * ((1.0 - fc) * v10 + fc * v11));
}

std::vector<float> bilinear_sample(const FeatureMap& f, Coord at) {
    if (f.empty()) throw PreconditionError("bilinear_sample: empty map");
    std::vector<float> out(f.channels());
    for (int c = 0; c < f.channels(); ++c) {
        out[c] = bilinear_sample_grid(f.channel(c), f.height(), f.width(), at);
    }
    return out;
}

FeatureMap bicubic_resize(const FeatureMap& f, int factor, ResizeDir dir) {
    if (factor < 1) throw SizeError("bicubic_resize: factor must be >= 1");
    const double scale = dir == ResizeDir::up ? factor : 1.0 / factor;
    const int oh = static_cast<int>(std::floor(f.height() * scale));
    const int ow = static_cast<int>(std::floor(f.width() * scale));
    if (oh < 1 || ow < 1) {
        throw SizeError("bicubic_resize: output dims " + std::to_string(oh) + "x" +
                        std::to_string(ow) + " below 1");
    }
    std::vector<float> out(static_cast<std::size_t>(f.channels()) * oh * ow);
    std::vector<double> plane(static_cast<std::size_t>(f.height()) * f.width());
    std::vector<double> rows, full;
    for (int c = 0; c < f.channels(); ++c) {
        auto ch = f.channel(c);
        std::copy(ch.begin(), ch.end(), plane.begin());
        resize_axis(plane, f.height(), f.width(), oh, scale, rows);
        // Transpose, resize columns, transpose back via a second axis pass.
        std::vector<double> t(static_cast<std::size_t>(f.width()) * oh);
        for (int i = 0; i < oh; ++i)
            for (int j = 0; j < f.width(); ++j)
                t[static_cast<std::size_t>(j) * oh + i] = rows[static_cast<std::size_t>(i) * f.width() + j];
        resize_axis(t, f.width(), oh, ow, scale, full);
        for (int i = 0; i < oh; ++i)
            for (int j = 0; j < ow; ++j)
                out[(static_cast<std::size_t>(c) * oh + i) * ow + j] =
                    static_cast<float>(full[static_cast<std::size_t>(j) * oh + i]);
    }
    return FeatureMap(f.channels(), oh, ow, std::move(out));
}

FeatureMap pixel_shuffle(const FeatureMap& f, int r) {
    if (r < 1 || f.channels() % (r * r) != 0) {
        throw SizeError("pixel_shuffle: channels " + std::to_string(f.channels()) +
                        " not divisible by r^2 = " + std::to_string(r * r));
    }
    const int oc = f.channels() / (r * r);
    const int oh = f.height() * r;
    const int ow = f.width() * r;
    FeatureMap out(oc, oh, ow);
    for (int c = 0; c < oc; ++c) {
        for (int di = 0; di < r; ++di) {
            for (int dj = 0; dj < r; ++dj) {
                const int ic = c * r * r + di * r + dj;
                for (int i = 0; i < f.height(); ++i) {
                    for (int j = 0; j < f.width(); ++j) {
                        out.at(c, r * i + di, r * j + dj) = f.at(ic, i, j);
                    }
                }
            }
        }
    }
    return out;
}

} // namespace ttvsr

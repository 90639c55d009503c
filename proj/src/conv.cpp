#include "conv.hpp"

#include <algorithm>

#include "ttvsr/parallel.hpp"

namespace ttvsr::detail {

FeatureMap conv2d(const FeatureMap& in, const Tensor& weight, const Tensor& bias) {
    if (weight.dims.size() != 4) {
        throw LoadError("tensor " + weight.name + " is not a conv weight");
    }
    const int oc = static_cast<int>(weight.dims[0]);
    const int ic = static_cast<int>(weight.dims[1]);
    const int kh = static_cast<int>(weight.dims[2]);
    const int kw = static_cast<int>(weight.dims[3]);
    if (ic != in.channels()) {
        throw SizeError("conv " + weight.name + ": input channels " +
                        std::to_string(in.channels()) + " vs weight " + std::to_string(ic));
    }
    if (bias.dims.size() != 1 || static_cast<int>(bias.dims[0]) != oc) {
        throw SizeError("conv " + weight.name + ": bias shape mismatch");
    }
    const int h = in.height();
    const int w = in.width();
    const int ph = kh / 2;
    const int pw = kw / 2;
    FeatureMap out(oc, h, w);
    const float* src = in.data().data();
    const std::size_t plane = static_cast<std::size_t>(h) * w;
    parallel_for(0, oc, [&](int o) {
        const float* wbase =
            weight.data.data() + static_cast<std::size_t>(o) * ic * kh * kw;
        for (int i = 0; i < h; ++i) {
            const bool row_inner = i >= ph && i + ph < h;
            for (int j = 0; j < w; ++j) {
                double acc = bias.data[static_cast<std::size_t>(o)];
                const float* wp = wbase;
                if (row_inner && j >= pw && j + pw < w) {
                    for (int c = 0; c < ic; ++c) {
                        const float* cp = src + c * plane + static_cast<std::size_t>(i - ph) * w + (j - pw);
                        for (int ki = 0; ki < kh; ++ki, cp += w) {
                            for (int kj = 0; kj < kw; ++kj, ++wp) {
                                acc += static_cast<double>(*wp) * cp[kj];
                            }
                        }
                    }
                } else {
                    for (int c = 0; c < ic; ++c) {
                        for (int ki = 0; ki < kh; ++ki) {
                            const int si = std::clamp(i + ki - ph, 0, h - 1);
                            for (int kj = 0; kj < kw; ++kj, ++wp) {
                                const int sj = std::clamp(j + kj - pw, 0, w - 1);
                                acc += static_cast<double>(*wp) * in.at(c, si, sj);
                            }
                        }
                    }
                }
                out.at(o, i, j) = static_cast<float>(acc);
            }
        }
    });
    out.check_finite();
    return out;
}

FeatureMap relu(FeatureMap f) {
    for (float& v : f.data()) v = std::max(v, 0.0f);
    return f;
}

FeatureMap residual_block(const FeatureMap& in, const Tensor& w1, const Tensor& b1,
                          const Tensor& w2, const Tensor& b2) {
    FeatureMap y = conv2d(relu(conv2d(in, w1, b1)), w2, b2);
    for (std::size_t k = 0; k < y.data().size(); ++k) y.data()[k] += in.data()[k];
    return y;
}

} // namespace ttvsr::detail

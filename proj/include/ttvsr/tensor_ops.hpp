#pragma once

#include <vector>

#include "ttvsr/feature_map.hpp"
#include "ttvsr/token_grid.hpp"

namespace ttvsr {

/// Sliding-window patch extraction. Grid is gh x gw with
/// gh = floor((H + 2*zero_pad - kernel)/stride) + 1 (same for gw); each
/// token is the channel-major copy of its k x k patch, zero where the
/// padding region is read.
TokenGrid unfold(const FeatureMap& f, int kernel, int stride, int zero_pad);

/// Adjoint of unfold: every token element is summed into the output pixel
/// it was read from; contributions landing in the padding region are
/// discarded. Token length must be a multiple of kernel^2.
FeatureMap fold(const TokenGrid& tg, int out_h, int out_w, int kernel, int stride,
                int zero_pad);

/// Non-overlapping mean pooling; H and W must be divisible by kernel.
FeatureMap avg_pool(const FeatureMap& f, int kernel);

/// Bilinear blend of the four surrounding pixels, border-replicated
/// (coordinate clamped to [0, H-1] x [0, W-1]). Returns one value per channel.
std::vector<float> bilinear_sample(const FeatureMap& f, Coord at);

/// Single-channel variant over an arbitrary grid stored row-major.
float bilinear_sample_grid(std::span<const float> grid, int h, int w, Coord at);

enum class ResizeDir { up, down };

/// Separable Catmull-Rom bicubic (a = -0.5), pixel-center alignment, border
/// replication. Down direction widens the kernel to the coarse grid spacing
/// (prefilter) before sampling. `factor` is the integer scale, >= 1.
FeatureMap bicubic_resize(const FeatureMap& f, int factor, ResizeDir dir);

/// Sub-pixel rearrangement: output (C/r^2, rH, rW) with
/// out(c, r*i+di, r*j+dj) = in(c*r^2 + di*r + dj, i, j).
FeatureMap pixel_shuffle(const FeatureMap& f, int r);

} // namespace ttvsr

#pragma once

#include <span>
#include <vector>

#include "ttvsr/feature_map.hpp"
#include "ttvsr/token_grid.hpp"

namespace ttvsr {

/// Fuses receptive fields of several kernel sizes into one fixed-length
/// token per cell of the (H/base) x (W/base) grid. For each kernel k the
/// k x k patch at stride `base` (centered via symmetric padding of
/// ceil((k-base)/2), reads border-replicated) is adaptive-average-pooled
/// per channel to base x base; scales are then averaged element-wise.
/// Tokens have length C * base^2. With kernels == {base} this equals
/// unfold(f, base, base, 0).
TokenGrid cross_scale_tokenize(const FeatureMap& f, std::span<const int> kernels,
                               int base);

/// The same fusion laid back onto the pixel grid: folding the cross-scale
/// tokens at stride `base` (non-overlapping) gives a C x H x W map whose
/// base-aligned patches are exactly the cross-scale tokens. With kernels ==
/// {base} this is the identity.
FeatureMap cross_scale_map(const FeatureMap& f, std::span<const int> kernels, int base);

/// For each fractional center, bilinear-samples the kernel x kernel patch
/// whose cell (i, j) is read at center + (i, j) - (kernel-1)/2, border
/// clamped, flattened channel-major. Token length is C * kernel^2.
std::vector<std::vector<float>> tokens_from_map_at(const FeatureMap& f,
                                                   std::span<const Coord> centers,
                                                   int kernel);

} // namespace ttvsr

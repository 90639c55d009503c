#pragma once

#include "ttvsr/feature_map.hpp"

namespace ttvsr {

/// -10*log10(MSE), dynamic range 1, over all channels and pixels (or the
/// BT.601 luma plane with luma_only). Identical inputs give +infinity.
double psnr(const FeatureMap& a, const FeatureMap& b, bool luma_only = false);

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03,
/// dynamic range 1, averaged over window positions fully inside the image.
/// Channels average unless luma_only, which compares BT.601 luma instead.
double ssim(const FeatureMap& a, const FeatureMap& b, bool luma_only = false);

} // namespace ttvsr

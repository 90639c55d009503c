#pragma once

#include "ttvsr/feature_map.hpp"
#include "ttvsr/weights.hpp"

namespace ttvsr::detail {

/// Stride-1 cross-correlation with replicate padding; weight dims are
/// [out_c, in_c, kh, kw] with odd kh, kw. Parallel over output channels,
/// each accumulated sequentially so results do not depend on thread count.
FeatureMap conv2d(const FeatureMap& in, const Tensor& weight, const Tensor& bias);

FeatureMap relu(FeatureMap f);

/// x + conv2(relu(conv1(x)))
FeatureMap residual_block(const FeatureMap& in, const Tensor& w1, const Tensor& b1,
                          const Tensor& w2, const Tensor& b2);

} // namespace ttvsr::detail

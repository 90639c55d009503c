#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ttvsr/feature_map.hpp"
#include "ttvsr/trajectory.hpp"

namespace ttvsr {

/// Accumulates multiply-accumulates spent in similarity dot products.
/// Normalization multiplies, divisions and square roots are not counted.
struct MacCounter {
    std::uint64_t macs = 0;
};

#ifdef TTVSR_DISABLE_MAC_COUNTER
inline constexpr bool kMacCounterEnabled = false;
#else
inline constexpr bool kMacCounterEnabled = true;
#endif

/// Cosine similarity in [-1, 1]. A zero-norm operand yields 0 by convention
/// (arises for fully padded border tokens). When `mc` is given, adds the
/// token length (the q.k dot product MACs) to it.
double cosine_similarity(std::span<const float> q, std::span<const float> k,
                         MacCounter* mc = nullptr);

/// Hard time index plus the similarity at it.
struct AttentionSelection {
    int hard_index = 0;
    double soft_conf = 0.0;
};

/// Argmax of cosine similarity over the time-ordered keys; ties break to the
/// smallest index. soft_conf is the winning similarity.
AttentionSelection select(std::span<const float> q,
                          const std::vector<std::vector<float>>& keys,
                          MacCounter* mc = nullptr);

/// Concatenation of q with soft_conf * values[hard_index].
std::vector<float> attend(std::span<const float> q, const AttentionSelection& sel,
                          const std::vector<std::vector<float>>& values);

/// Keys and values indexed along trajectories, one per stored past time
/// (the current frame is excluded). keys[i] / values[i] belong to absolute
/// time oldest_time + i.
struct GatheredTokens {
    int oldest_time = 0;
    std::vector<std::vector<float>> keys;
    std::vector<std::vector<float>> values;
};

/// For token-grid cell (m, n) with patch size `token_kernel`, looks up the
/// trajectory position stored in each past location map at the cell's center
/// pixel and bilinear-samples the key/value patches there. key_frames and
/// value_frames carry one map per stored past time, oldest first.
GatheredTokens gather_keys_values(const LocationMapStack& maps,
                                  std::span<const FeatureMap> key_frames,
                                  std::span<const FeatureMap> value_frames,
                                  int token_kernel, int m, int n);

} // namespace ttvsr

#pragma once

#include <span>
#include <vector>

#include "ttvsr/config.hpp"
#include "ttvsr/feature_map.hpp"
#include "ttvsr/motion.hpp"
#include "ttvsr/weights.hpp"

namespace ttvsr {

enum class EmbedKind { phi, varphi };

/// Embedding network: conv 3 -> channels (3x3, stride 1, replicate padding)
/// followed by extract_blocks residual blocks. phi feeds queries and keys,
/// varphi feeds values.
FeatureMap embed_features(const FeatureMap& frame, const WeightSet& w,
                          const PipelineConfig& cfg, EmbedKind which);

/// Reconstruction network: recon_blocks residual blocks at the input width,
/// a conv to 3*upscale^2 channels, then pixel shuffle. Returns the 3 x 4H x 4W
/// residual image.
FeatureMap reconstruct(const FeatureMap& feature, const WeightSet& w,
                       const PipelineConfig& cfg);

/// Full inference over a frame sequence: per frame, block-matched backward
/// flow advances the location maps; trajectory-aware attention gathers keys
/// (phi features) and values (varphi features) along trajectories in a
/// coarse 4x4 cross-scale pool and a fine 1x1 pool; pool outputs concatenate
/// into a 1x1 mixing conv; reconstruction adds a bicubic x4 residual. With
/// cfg.bidirectional the reversed pass runs with shared weights and both
/// attention features concatenate before reconstruction. Optional
/// `external_flows` (one per step, frame t to t-1, forward order) replace
/// block matching.
std::vector<FeatureMap> run_sequence(std::span<const FeatureMap> frames,
                                     const WeightSet& w, const PipelineConfig& cfg,
                                     std::span<const Flow> external_flows = {});

/// Mean over frames of sqrt(||a_t - b_t||^2 + eps^2) with eps = 1e-8; the
/// norm runs over all pixels and channels.
double charbonnier(std::span<const FeatureMap> a, std::span<const FeatureMap> b);

} // namespace ttvsr

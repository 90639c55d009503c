#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttvsr/feature_map.hpp"

namespace ttvsr {

enum class SynthKind { pan, zoom, still, noise };

SynthKind synth_kind_from_name(const std::string& name);

/// Per-frame displacement of the pan sequence, in pixels (row, col).
/// Integer total displacement every 4 frames keeps warp checks exact.
inline constexpr Coord kPanVelocity{0.5f, 0.25f};

/// Seeded smooth texture in [0.1, 0.9], 3 x h x w.
FeatureMap synth_texture(int h, int w, std::uint32_t seed);

/// Deterministic test sequences: `pan` translates a seeded texture by
/// kPanVelocity per frame, `zoom` rescales it about the center, `still`
/// repeats it, `noise` draws fresh noise per frame.
std::vector<FeatureMap> synth_sequence(SynthKind kind, int frames, int h, int w,
                                       std::uint32_t seed);

} // namespace ttvsr

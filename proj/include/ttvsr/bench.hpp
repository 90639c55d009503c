#pragma once

#include <cstdint>

namespace ttvsr {

/// Attention cost parameters: T frames of C x H x W features split into
/// Dh x Dw tokens.
struct AttnShape {
    int T = 1;
    int C = 1;
    int H = 1;
    int W = 1;
    int Dh = 1;
    int Dw = 1;

    void validate() const;
};

/// Similarity MACs of exhaustive attention: one query against every token of
/// every frame, T * (H/Dh) * (W/Dw) * C * Dh * Dw.
std::uint64_t cost_vanilla(const AttnShape& s);

/// Similarity MACs along a trajectory: one token per frame, T * C * Dh * Dw.
std::uint64_t cost_trajectory(const AttnShape& s);

enum class AttnPath { trajectory, vanilla };

/// Runs a single-query attention pass over seeded synthetic tokens with the
/// similarity MAC counter attached and returns the counted MACs. Matches the
/// closed forms exactly.
std::uint64_t measure_similarity_macs(const AttnShape& s, AttnPath path,
                                      std::uint32_t seed = 0);

} // namespace ttvsr

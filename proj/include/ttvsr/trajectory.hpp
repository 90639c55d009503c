#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "ttvsr/feature_map.hpp"
#include "ttvsr/motion.hpp"

namespace ttvsr {

/// H x W grid of coordinates: entry (m, n) is the time-`time_tag` position
/// of the trajectory ending at cell (m, n) in the current frame.
struct LocationMap {
    int height = 0;
    int width = 0;
    int time_tag = 0;
    std::vector<float> row; // H*W, row coordinate per cell
    std::vector<float> col;

    Coord coord_at(int m, int n) const {
        const std::size_t k = static_cast<std::size_t>(m) * width + n;
        return {row[k], col[k]};
    }

    /// Bilinear read of the stored coordinate field at a fractional cell
    /// position, border-replicated.
    Coord sample(Coord at) const;
};

/// coords(m, n) = (m, n).
LocationMap identity_map(int h, int w, int time_tag);

/// Time-ordered positions of one tracked point; points.front() is the
/// oldest stored time (start_time), points.back() is exactly (end_m, end_n).
struct Trajectory {
    int start_time = 0;
    int end_m = 0;
    int end_n = 0;
    std::vector<Coord> points;
};

/// Time-ordered location maps; the last map is always the identity grid.
/// update() advances one frame: every stored map is warped by whole-matrix
/// bilinear sampling at cell + flow, then a fresh identity map is appended.
/// An optional ring limit keeps only the most recent maps.
class LocationMapStack {
  public:
    static LocationMapStack initial(int h, int w, std::optional<int> ring_limit = {});

    int height() const { return h_; }
    int width() const { return w_; }

    /// Total time steps seen; the last stored map has time_tag current_time()-1.
    int current_time() const { return current_time_; }
    int oldest_time() const { return current_time_ - static_cast<int>(maps_.size()); }
    int stored_count() const { return static_cast<int>(maps_.size()); }

    /// Map at absolute time t (oldest_time() <= t < current_time()).
    const LocationMap& map_at(int t) const;

    void update(const Flow& flow);

    Trajectory trajectory_of(int m, int n) const;

    /// Accumulated warp cell samples across updates; one update adds
    /// stored_count-before * H * W.
    std::uint64_t sample_ops() const { return sample_ops_; }

  private:
    LocationMapStack() = default;

    int h_ = 0;
    int w_ = 0;
    int current_time_ = 0;
    std::optional<int> ring_limit_;
    std::uint64_t sample_ops_ = 0;
    std::deque<LocationMap> maps_;
};

/// Independent per-point tracker: starting from (m, n), chains
/// p_prev = clamp(p + flow(p)) through `flows` given newest-first, and
/// returns the time-ordered trajectory. Never touches LocationMapStack.
Trajectory oracle_track(std::span<const Flow> flows_newest_first, int m, int n);

} // namespace ttvsr

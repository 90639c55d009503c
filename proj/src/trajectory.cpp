#include "ttvsr/trajectory.hpp"

#include <algorithm>

#include "ttvsr/parallel.hpp"
#include "ttvsr/tensor_ops.hpp"

namespace ttvsr {

Coord LocationMap::sample(Coord at) const {
    return {bilinear_sample_grid(row, height, width, at),
            bilinear_sample_grid(col, height, width, at)};
}

LocationMap identity_map(int h, int w, int time_tag) {
    if (h < 1 || w < 1) throw SizeError("identity_map: dims must be >= 1");
    LocationMap m;
    m.height = h;
    m.width = w;
    m.time_tag = time_tag;
    m.row.resize(static_cast<std::size_t>(h) * w);
    m.col.resize(m.row.size());
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * w + j;
            m.row[k] = static_cast<float>(i);
            m.col[k] = static_cast<float>(j);
        }
    }
    return m;
}

LocationMapStack LocationMapStack::initial(int h, int w, std::optional<int> ring_limit) {
    if (ring_limit && *ring_limit < 1) {
        throw PreconditionError("ring limit must be >= 1");
    }
    LocationMapStack s;
    s.h_ = h;
    s.w_ = w;
    s.ring_limit_ = ring_limit;
    s.maps_.push_back(identity_map(h, w, 0));
    s.current_time_ = 1;
    return s;
}

const LocationMap& LocationMapStack::map_at(int t) const {
    if (t < oldest_time() || t >= current_time_) {
        throw BoundsError("map_at: time " + std::to_string(t) + " outside stored range [" +
                          std::to_string(oldest_time()) + ", " +
                          std::to_string(current_time_) + ")");
    }
    return maps_[static_cast<std::size_t>(t - oldest_time())];
}

void LocationMapStack::update(const Flow& flow) {
    if (flow.height() != h_ || flow.width() != w_) {
        throw SizeError("update: flow " + std::to_string(flow.height()) + "x" +
                        std::to_string(flow.width()) + " vs stack " + std::to_string(h_) +
                        "x" + std::to_string(w_));
    }
    const int stored = static_cast<int>(maps_.size());
    parallel_for(0, stored, [&](int mi) {
        LocationMap& lm = maps_[static_cast<std::size_t>(mi)];
        LocationMap warped;
        warped.height = h_;
        warped.width = w_;
        warped.time_tag = lm.time_tag;
        warped.row.resize(lm.row.size());
        warped.col.resize(lm.col.size());
        for (int m = 0; m < h_; ++m) {
            for (int n = 0; n < w_; ++n) {
                const Coord pos{static_cast<float>(m) + flow.d_row(m, n),
                                static_cast<float>(n) + flow.d_col(m, n)};
                const Coord c = clamp_coord(lm.sample(pos), h_, w_);
                const std::size_t k = static_cast<std::size_t>(m) * w_ + n;
                warped.row[k] = c.row;
                warped.col[k] = c.col;
            }
        }
        lm = std::move(warped);
    });
    sample_ops_ += static_cast<std::uint64_t>(stored) * h_ * w_;
    maps_.push_back(identity_map(h_, w_, current_time_));
    ++current_time_;
    if (ring_limit_) {
        while (static_cast<int>(maps_.size()) > *ring_limit_) maps_.pop_front();
    }
}

Trajectory LocationMapStack::trajectory_of(int m, int n) const {
    if (m < 0 || m >= h_ || n < 0 || n >= w_) {
        throw BoundsError("trajectory_of: cell (" + std::to_string(m) + ", " +
                          std::to_string(n) + ") outside " + std::to_string(h_) + "x" +
                          std::to_string(w_));
    }
    Trajectory t;
    t.start_time = oldest_time();
    t.end_m = m;
    t.end_n = n;
    t.points.reserve(maps_.size());
    for (const auto& lm : maps_) t.points.push_back(lm.coord_at(m, n));
    return t;
}

Trajectory oracle_track(std::span<const Flow> flows_newest_first, int m, int n) {
    Trajectory t;
    t.end_m = m;
    t.end_n = n;
    Coord p{static_cast<float>(m), static_cast<float>(n)};
    std::vector<Coord> reversed;
    reversed.push_back(p);
    for (const Flow& flow : flows_newest_first) {
        const Coord d = flow.sample(p);
        p = clamp_coord({p.row + d.row, p.col + d.col}, flow.height(), flow.width());
        reversed.push_back(p);
    }
    t.start_time = 0;
    t.points.assign(reversed.rbegin(), reversed.rend());
    return t;
}

} // namespace ttvsr

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "ttvsr/feature_map.hpp"

namespace ttvsr {

/// Backward displacement field in pixel units: the sampling position for
/// output pixel p is p + (d_row(p), d_col(p)) in the previous frame.
class Flow {
  public:
    Flow() = default;
    Flow(int height, int width);
    Flow(int height, int width, std::vector<float> d_row, std::vector<float> d_col);

    int height() const { return height_; }
    int width() const { return width_; }

    float d_row(int i, int j) const { return d_row_[idx(i, j)]; }
    float d_col(int i, int j) const { return d_col_[idx(i, j)]; }
    float& d_row(int i, int j) { return d_row_[idx(i, j)]; }
    float& d_col(int i, int j) { return d_col_[idx(i, j)]; }

    std::span<const float> rows() const { return d_row_; }
    std::span<const float> cols() const { return d_col_; }

    /// Displacement at a fractional position, bilinear, border-replicated.
    Coord sample(Coord at) const;

    /// Finite values with |d| <= max(H, W).
    void check() const;

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * width_ + j;
    }

    int height_ = 0;
    int width_ = 0;
    std::vector<float> d_row_;
    std::vector<float> d_col_;
};

/// Per-pixel integer displacement minimizing the SAD of the patch x patch
/// window (border-clamped) over a (2*radius+1)^2 search window. Ties break
/// by smallest displacement magnitude, then (d_row, d_col) lexicographic.
Flow block_match_flow(const FeatureMap& cur, const FeatureMap& prev, int patch,
                      int radius);

/// Average-pool both components by `factor` and rescale displacements to the
/// reduced resolution (divide by factor).
Flow pool_flow(const Flow& flow, int factor);

/// Middlebury .flo: magic "PIEH", LE int32 width/height, then row-major
/// interleaved float32 (d_col, d_row) pairs. Round trips bit-exact.
Flow read_flo(const std::filesystem::path& path);
void write_flo(const Flow& flow, const std::filesystem::path& path);

} // namespace ttvsr

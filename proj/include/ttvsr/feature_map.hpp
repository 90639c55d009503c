#pragma once

#include <span>
#include <string>
#include <vector>

#include "ttvsr/error.hpp"

namespace ttvsr {

/// Continuous pixel coordinate, 0-based, pixel centers at integers.
/// Consumers clamp to [0, H-1] x [0, W-1] at the point of sampling.
struct Coord {
    float row = 0.0f;
    float col = 0.0f;
};

/// Dense C x H x W grid of scalar features, channel-major: value (c, i, j)
/// lives at data[(c*H + i)*W + j]. All values are finite; the validating
/// constructor rejects NaN/Inf, and every operation returns through it.
class FeatureMap {
  public:
    FeatureMap() = default;

    /// Zero-initialized map.
    FeatureMap(int channels, int height, int width);

    /// Takes ownership of `data`; throws SizeError on length mismatch and
    /// PreconditionError on non-finite values.
    FeatureMap(int channels, int height, int width, std::vector<float> data);

    int channels() const { return channels_; }
    int height() const { return height_; }
    int width() const { return width_; }
    bool empty() const { return data_.empty(); }
    std::size_t size() const { return data_.size(); }

    float at(int c, int i, int j) const {
        return data_[(static_cast<std::size_t>(c) * height_ + i) * width_ + j];
    }
    float& at(int c, int i, int j) {
        return data_[(static_cast<std::size_t>(c) * height_ + i) * width_ + j];
    }

    /// Border-replicated read: i, j clamped into the grid.
    float at_clamped(int c, int i, int j) const;

    std::span<const float> data() const { return data_; }
    std::span<float> data() { return data_; }

    /// One channel as a contiguous H*W span.
    std::span<const float> channel(int c) const {
        return {data_.data() + static_cast<std::size_t>(c) * height_ * width_,
                static_cast<std::size_t>(height_) * width_};
    }

    float min_value() const;
    float max_value() const;
    double sum() const;

    /// Re-validate the finiteness invariant after in-place mutation.
    void check_finite() const;

  private:
    int channels_ = 0;
    int height_ = 0;
    int width_ = 0;
    std::vector<float> data_;
};

/// Clamp a coordinate into [0, h-1] x [0, w-1].
Coord clamp_coord(Coord p, int h, int w);

} // namespace ttvsr

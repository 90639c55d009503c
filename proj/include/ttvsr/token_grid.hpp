#pragma once

#include <span>
#include <vector>

#include "ttvsr/error.hpp"

namespace ttvsr {

/// Regular grid of fixed-length tokens extracted from a FeatureMap.
/// Token (gi, gj) is a contiguous run of token_len scalars; for patch
/// tokens the layout is channel-major (c, ki, kj).
class TokenGrid {
  public:
    TokenGrid() = default;
    TokenGrid(int grid_h, int grid_w, int token_len, int base_kernel, int base_stride)
        : grid_h_(grid_h), grid_w_(grid_w), token_len_(token_len),
          base_kernel_(base_kernel), base_stride_(base_stride) {
        if (grid_h < 0 || grid_w < 0 || token_len < 0) {
            throw SizeError("TokenGrid dims must be non-negative");
        }
        data_.assign(static_cast<std::size_t>(grid_h) * grid_w * token_len, 0.0f);
    }

    int grid_h() const { return grid_h_; }
    int grid_w() const { return grid_w_; }
    int token_len() const { return token_len_; }
    int base_kernel() const { return base_kernel_; }
    int base_stride() const { return base_stride_; }

    std::span<const float> token(int gi, int gj) const {
        return {data_.data() + offset(gi, gj), static_cast<std::size_t>(token_len_)};
    }
    std::span<float> token(int gi, int gj) {
        return {data_.data() + offset(gi, gj), static_cast<std::size_t>(token_len_)};
    }

    std::span<const float> data() const { return data_; }
    std::span<float> data() { return data_; }

  private:
    std::size_t offset(int gi, int gj) const {
        return (static_cast<std::size_t>(gi) * grid_w_ + gj) * token_len_;
    }

    int grid_h_ = 0;
    int grid_w_ = 0;
    int token_len_ = 0;
    int base_kernel_ = 0;
    int base_stride_ = 0;
    std::vector<float> data_;
};

} // namespace ttvsr

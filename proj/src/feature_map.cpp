#include "ttvsr/feature_map.hpp"

#include <algorithm>
#include <cmath>

namespace ttvsr {

namespace {

void check_dims(int channels, int height, int width) {
    if (channels < 0 || height < 0 || width < 0) {
        throw SizeError("FeatureMap dims must be non-negative, got C=" +
                        std::to_string(channels) + " H=" + std::to_string(height) +
                        " W=" + std::to_string(width));
    }
}

} // namespace

FeatureMap::FeatureMap(int channels, int height, int width)
    : channels_(channels), height_(height), width_(width) {
    check_dims(channels, height, width);
    data_.assign(static_cast<std::size_t>(channels) * height * width, 0.0f);
}

FeatureMap::FeatureMap(int channels, int height, int width, std::vector<float> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
    check_dims(channels, height, width);
    const std::size_t expect = static_cast<std::size_t>(channels) * height * width;
    if (data_.size() != expect) {
        throw SizeError("FeatureMap data length " + std::to_string(data_.size()) +
                        " does not match C*H*W = " + std::to_string(expect) + " (C=" +
                        std::to_string(channels) + " H=" + std::to_string(height) +
                        " W=" + std::to_string(width) + ")");
    }
    check_finite();
}

float FeatureMap::at_clamped(int c, int i, int j) const {
    i = std::clamp(i, 0, height_ - 1);
    j = std::clamp(j, 0, width_ - 1);
    return at(c, i, j);
}

float FeatureMap::min_value() const {
    return data_.empty() ? 0.0f : *std::min_element(data_.begin(), data_.end());
}

float FeatureMap::max_value() const {
    return data_.empty() ? 0.0f : *std::max_element(data_.begin(), data_.end());
}

double FeatureMap::sum() const {
    double s = 0.0;
    for (float v : data_) s += v;
    return s;
}

void FeatureMap::check_finite() const {
    for (float v : data_) {
        if (!std::isfinite(v)) {
            throw PreconditionError("FeatureMap holds a non-finite value");
        }
    }
}

Coord clamp_coord(Coord p, int h, int w) {
    p.row = std::clamp(p.row, 0.0f, static_cast<float>(h - 1));
    p.col = std::clamp(p.col, 0.0f, static_cast<float>(w - 1));
    return p;
}

} // namespace ttvsr

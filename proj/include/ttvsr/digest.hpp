#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ttvsr/feature_map.hpp"

namespace ttvsr {

/// FNV-1a 64-bit over raw bytes; stable across runs on one platform.
class Fnv1a64 {
  public:
    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ULL;
        }
    }

    void update(std::span<const float> values) {
        update(values.data(), values.size() * sizeof(float));
    }

    std::uint64_t value() const { return state_; }
    std::string hex() const;

  private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t digest_of(const FeatureMap& f);
std::string hex_digest_of(const FeatureMap& f);

} // namespace ttvsr

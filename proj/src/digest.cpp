#include "ttvsr/digest.hpp"

#include <cstdio>

namespace ttvsr {

std::string Fnv1a64::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(state_));
    return buf;
}

std::uint64_t digest_of(const FeatureMap& f) {
    Fnv1a64 h;
    const std::int32_t dims[3] = {f.channels(), f.height(), f.width()};
    h.update(dims, sizeof(dims));
    h.update(f.data());
    return h.value();
}

std::string hex_digest_of(const FeatureMap& f) {
    Fnv1a64 h;
    const std::int32_t dims[3] = {f.channels(), f.height(), f.width()};
    h.update(dims, sizeof(dims));
    h.update(f.data());
    return h.hex();
}

} // namespace ttvsr

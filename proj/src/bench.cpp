#include "ttvsr/bench.hpp"

#include <random>
#include <vector>

#include "ttvsr/attention.hpp"

namespace ttvsr {

void AttnShape::validate() const {
    if (T < 1 || C < 1 || H < 1 || W < 1 || Dh < 1 || Dw < 1 || H % Dh != 0 ||
        W % Dw != 0) {
        throw SizeError("AttnShape: need T,C,H,W,Dh,Dw >= 1 with Dh|H and Dw|W (T=" +
                        std::to_string(T) + " C=" + std::to_string(C) + " H=" +
                        std::to_string(H) + " W=" + std::to_string(W) + " Dh=" +
                        std::to_string(Dh) + " Dw=" + std::to_string(Dw) + ")");
    }
}

std::uint64_t cost_vanilla(const AttnShape& s) {
    s.validate();
    return static_cast<std::uint64_t>(s.T) * (s.H / s.Dh) * (s.W / s.Dw) * s.C * s.Dh *
           s.Dw;
}

std::uint64_t cost_trajectory(const AttnShape& s) {
    s.validate();
    return static_cast<std::uint64_t>(s.T) * s.C * s.Dh * s.Dw;
}

std::uint64_t measure_similarity_macs(const AttnShape& s, AttnPath path,
                                      std::uint32_t seed) {
    s.validate();
    if (!kMacCounterEnabled) {
        throw FeatureError("similarity MAC counter compiled out");
    }
    const std::size_t token_len =
        static_cast<std::size_t>(s.C) * s.Dh * s.Dw;
    const std::size_t keys_per_frame =
        path == AttnPath::trajectory
            ? 1
            : static_cast<std::size_t>(s.H / s.Dh) * (s.W / s.Dw);

    std::mt19937 rng(seed);
    const auto rand_token = [&] {
        std::vector<float> t(token_len);
        for (float& v : t) {
            v = static_cast<float>(rng()) / 4294967296.0f - 0.5f;
        }
        return t;
    };

    const std::vector<float> q = rand_token();
    std::vector<std::vector<float>> keys;
    keys.reserve(static_cast<std::size_t>(s.T) * keys_per_frame);
    for (int t = 0; t < s.T; ++t) {
        for (std::size_t k = 0; k < keys_per_frame; ++k) keys.push_back(rand_token());
    }

    MacCounter counter;
    (void)select(q, keys, &counter);
    return counter.macs;
}

} // namespace ttvsr

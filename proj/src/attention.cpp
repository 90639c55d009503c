#include "ttvsr/attention.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ttvsr/tokenize.hpp"

namespace ttvsr {

double cosine_similarity(std::span<const float> q, std::span<const float> k,
                         MacCounter* mc) {
    if (q.size() != k.size()) {
        throw SizeError("cosine_similarity: token lengths differ (" +
                        std::to_string(q.size()) + " vs " + std::to_string(k.size()) + ")");
    }
    double dot = 0.0, qq = 0.0, kk = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        dot += static_cast<double>(q[i]) * k[i];
        qq += static_cast<double>(q[i]) * q[i];
        kk += static_cast<double>(k[i]) * k[i];
    }
    if (mc) {
        if (!kMacCounterEnabled) throw FeatureError("similarity MAC counter disabled");
        mc->macs += q.size();
    }
    if (qq == 0.0 || kk == 0.0) return 0.0;
    const double s = dot / (std::sqrt(qq) * std::sqrt(kk));
    return std::clamp(s, -1.0, 1.0);
}

AttentionSelection select(std::span<const float> q,
                          const std::vector<std::vector<float>>& keys, MacCounter* mc) {
    if (keys.empty()) throw PreconditionError("select: empty key list");
    AttentionSelection sel;
    sel.hard_index = 0;
    sel.soft_conf = cosine_similarity(q, keys[0], mc);
    for (std::size_t t = 1; t < keys.size(); ++t) {
        const double s = cosine_similarity(q, keys[t], mc);
        if (s > sel.soft_conf) {
            sel.soft_conf = s;
            sel.hard_index = static_cast<int>(t);
        }
    }
    return sel;
}

std::vector<float> attend(std::span<const float> q, const AttentionSelection& sel,
                          const std::vector<std::vector<float>>& values) {
    if (sel.hard_index < 0 || sel.hard_index >= static_cast<int>(values.size())) {
        throw BoundsError("attend: hard index " + std::to_string(sel.hard_index) +
                          " outside value list of length " + std::to_string(values.size()));
    }
    const auto& v = values[static_cast<std::size_t>(sel.hard_index)];
    std::vector<float> out;
    out.reserve(q.size() + v.size());
    out.insert(out.end(), q.begin(), q.end());
    for (float x : v) out.push_back(static_cast<float>(sel.soft_conf * x));
    return out;
}

GatheredTokens gather_keys_values(const LocationMapStack& maps,
                                  std::span<const FeatureMap> key_frames,
                                  std::span<const FeatureMap> value_frames,
                                  int token_kernel, int m, int n) {
    const int past = maps.stored_count() - 1;
    if (static_cast<int>(key_frames.size()) != past ||
        static_cast<int>(value_frames.size()) != past) {
        throw SizeError("gather_keys_values: " + std::to_string(key_frames.size()) +
                        " key / " + std::to_string(value_frames.size()) +
                        " value frames for " + std::to_string(past) + " stored past maps");
    }
    for (int i = 0; i < past; ++i) {
        if (key_frames[i].height() != maps.height() ||
            key_frames[i].width() != maps.width() ||
            value_frames[i].height() != maps.height() ||
            value_frames[i].width() != maps.width()) {
            throw SizeError("gather_keys_values: frame " + std::to_string(i) +
                            " does not match the " + std::to_string(maps.height()) + "x" +
                            std::to_string(maps.width()) + " map grid");
        }
    }
    const float center_off = (token_kernel - 1) / 2.0f;
    const Coord query_center{m * token_kernel + center_off, n * token_kernel + center_off};
    if (query_center.row >= static_cast<float>(maps.height()) ||
        query_center.col >= static_cast<float>(maps.width()) || m < 0 || n < 0) {
        throw BoundsError("gather_keys_values: cell (" + std::to_string(m) + ", " +
                          std::to_string(n) + ") outside the token grid");
    }

    GatheredTokens out;
    out.oldest_time = maps.oldest_time();
    out.keys.reserve(static_cast<std::size_t>(past));
    out.values.reserve(static_cast<std::size_t>(past));
    for (int i = 0; i < past; ++i) {
        const LocationMap& lm = maps.map_at(out.oldest_time + i);
        const Coord center = lm.sample(query_center);
        const std::array<Coord, 1> cs{center};
        out.keys.push_back(std::move(
            tokens_from_map_at(key_frames[static_cast<std::size_t>(i)], cs, token_kernel)[0]));
        out.values.push_back(std::move(tokens_from_map_at(
            value_frames[static_cast<std::size_t>(i)], cs, token_kernel)[0]));
    }
    return out;
}

} // namespace ttvsr

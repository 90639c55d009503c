#include "ttvsr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ttvsr/tensor_ops.hpp"

namespace ttvsr {

SynthKind synth_kind_from_name(const std::string& name) {
    if (name == "pan") return SynthKind::pan;
    if (name == "zoom") return SynthKind::zoom;
    if (name == "static") return SynthKind::still;
    if (name == "noise") return SynthKind::noise;
    throw PreconditionError("unknown synth kind " + name);
}

namespace {

std::vector<float> smooth_noise_plane(int h, int w, std::mt19937& rng) {
    std::vector<float> v(static_cast<std::size_t>(h) * w);
    for (float& x : v) x = static_cast<float>(rng()) / 4294967296.0f;
    // Two clamped 3x3 box blurs take the harshness out of the raw draw.
    std::vector<float> tmp(v.size());
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < h; ++i) {
            for (int j = 0; j < w; ++j) {
                double acc = 0.0;
                for (int di = -1; di <= 1; ++di) {
                    for (int dj = -1; dj <= 1; ++dj) {
                        const int si = std::clamp(i + di, 0, h - 1);
                        const int sj = std::clamp(j + dj, 0, w - 1);
                        acc += v[static_cast<std::size_t>(si) * w + sj];
                    }
                }
                tmp[static_cast<std::size_t>(i) * w + j] = static_cast<float>(acc / 9.0);
            }
        }
        std::swap(v, tmp);
    }
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const float lo = *lo_it;
    const float span = std::max(*hi_it - lo, 1e-6f);
    for (float& x : v) x = 0.1f + 0.8f * (x - lo) / span;
    return v;
}

} // namespace

FeatureMap synth_texture(int h, int w, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<float> data;
    data.reserve(static_cast<std::size_t>(3) * h * w);
    for (int c = 0; c < 3; ++c) {
        auto plane = smooth_noise_plane(h, w, rng);
        data.insert(data.end(), plane.begin(), plane.end());
    }
    return FeatureMap(3, h, w, std::move(data));
}

std::vector<FeatureMap> synth_sequence(SynthKind kind, int frames, int h, int w,
                                       std::uint32_t seed) {
    if (frames < 1) throw PreconditionError("synth_sequence: need >= 1 frame");
    if (h < 1 || w < 1) throw SizeError("synth_sequence: dims must be >= 1");

    std::vector<FeatureMap> out;
    out.reserve(static_cast<std::size_t>(frames));

    if (kind == SynthKind::noise) {
        for (int t = 0; t < frames; ++t) {
            out.push_back(synth_texture(h, w, seed + static_cast<std::uint32_t>(t)));
        }
        return out;
    }

    const FeatureMap tex = synth_texture(h, w, seed);
    for (int t = 0; t < frames; ++t) {
        if (kind == SynthKind::still || t == 0) {
            out.push_back(tex);
            continue;
        }
        std::vector<float> data(tex.size());
        std::size_t idx = 0;
        const float cr = (h - 1) / 2.0f;
        const float cc = (w - 1) / 2.0f;
        const float inv_zoom = std::pow(1.0f / 1.05f, static_cast<float>(t));
        for (int c = 0; c < 3; ++c) {
            auto plane = tex.channel(c);
            for (int i = 0; i < h; ++i) {
                for (int j = 0; j < w; ++j, ++idx) {
                    Coord at;
                    if (kind == SynthKind::pan) {
                        at = {i - t * kPanVelocity.row, j - t * kPanVelocity.col};
                    } else { // zoom about the center
                        at = {cr + (i - cr) * inv_zoom, cc + (j - cc) * inv_zoom};
                    }
                    data[idx] = bilinear_sample_grid(plane, h, w, at);
                }
            }
        }
        out.emplace_back(3, h, w, std::move(data));
    }
    return out;
}

} // namespace ttvsr

#include "ttvsr/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "conv.hpp"
#include "ttvsr/attention.hpp"
#include "ttvsr/parallel.hpp"
#include "ttvsr/tensor_ops.hpp"
#include "ttvsr/tokenize.hpp"
#include "ttvsr/trajectory.hpp"

namespace ttvsr {

PipelineConfig test_config() {
    PipelineConfig cfg;
    cfg.channels = 16;
    cfg.extract_blocks = 2;
    cfg.recon_blocks = 2;
    cfg.seed = 42;
    return cfg;
}

FeatureMap embed_features(const FeatureMap& frame, const WeightSet& w,
                          const PipelineConfig& cfg, EmbedKind which) {
    if (frame.channels() != 3) {
        throw PreconditionError("embed_features: frame must have 3 channels, got " +
                                std::to_string(frame.channels()));
    }
    const std::string prefix = which == EmbedKind::phi ? "phi" : "varphi";
    FeatureMap f = detail::conv2d(frame, w.at(prefix + ".conv_in.weight"),
                                  w.at(prefix + ".conv_in.bias"));
    for (int b = 0; b < cfg.extract_blocks; ++b) {
        const std::string bp = prefix + ".block" + std::to_string(b);
        f = detail::residual_block(f, w.at(bp + ".conv1.weight"), w.at(bp + ".conv1.bias"),
                                   w.at(bp + ".conv2.weight"), w.at(bp + ".conv2.bias"));
    }
    return f;
}

FeatureMap reconstruct(const FeatureMap& feature, const WeightSet& w,
                       const PipelineConfig& cfg) {
    if (feature.channels() != cfg.recon_in_channels()) {
        throw SizeError("reconstruct: feature channels " +
                        std::to_string(feature.channels()) + " vs config " +
                        std::to_string(cfg.recon_in_channels()));
    }
    FeatureMap f = feature;
    for (int b = 0; b < cfg.recon_blocks; ++b) {
        const std::string bp = "recon.block" + std::to_string(b);
        f = detail::residual_block(f, w.at(bp + ".conv1.weight"), w.at(bp + ".conv1.bias"),
                                   w.at(bp + ".conv2.weight"), w.at(bp + ".conv2.bias"));
    }
    f = detail::conv2d(f, w.at("recon.conv_out.weight"), w.at("recon.conv_out.bias"));
    return pixel_shuffle(f, cfg.upscale);
}

namespace {

// Per-direction state: key/value source maps, one entry per stored past
// frame, kept aligned with the location-map stack's ring window.
struct PassMemory {
    std::vector<FeatureMap> keys;      // phi features
    std::vector<FeatureMap> values;    // varphi features
    std::vector<FeatureMap> cs_keys;   // cross-scale phi
    std::vector<FeatureMap> cs_values; // cross-scale varphi

    void trim(int keep) {
        const int excess = static_cast<int>(keys.size()) - keep;
        if (excess <= 0) return;
        keys.erase(keys.begin(), keys.begin() + excess);
        values.erase(values.begin(), values.begin() + excess);
        cs_keys.erase(cs_keys.begin(), cs_keys.begin() + excess);
        cs_values.erase(cs_values.begin(), cs_values.begin() + excess);
    }
};

std::vector<float> self_token(const FeatureMap& map, int kernel, int m, int n) {
    const float off = (kernel - 1) / 2.0f;
    const std::array<Coord, 1> center{Coord{m * kernel + off, n * kernel + off}};
    return tokens_from_map_at(map, center, kernel)[0];
}

// One attention pool over the token grid of `kernel`-sized cells. Emits a
// 2C x H x W map holding [query || soft * hard value] patches per cell.
// pool_times selects the absolute past times attended to; when empty (no
// history) the query attends to its own key/value patch.
FeatureMap attend_pool(const LocationMapStack& stack,
                       std::span<const FeatureMap> key_frames,
                       std::span<const FeatureMap> value_frames,
                       const FeatureMap& query_map, const FeatureMap& self_value_map,
                       int kernel, const std::vector<int>& pool_times) {
    const int h = query_map.height();
    const int w = query_map.width();
    const int gh = h / kernel;
    const int gw = w / kernel;
    const int c2 = 2 * query_map.channels();
    const TokenGrid queries = unfold(query_map, kernel, kernel, 0);
    TokenGrid out_tokens(gh, gw, c2 * kernel * kernel, kernel, kernel);

    parallel_for(0, gh, [&](int gi) {
        for (int gj = 0; gj < gw; ++gj) {
            const auto q = queries.token(gi, gj);
            std::vector<float> attended;
            if (pool_times.empty()) {
                const std::vector<std::vector<float>> keys{
                    self_token(query_map, kernel, gi, gj)};
                const std::vector<std::vector<float>> values{
                    self_token(self_value_map, kernel, gi, gj)};
                const AttentionSelection sel = select(q, keys);
                attended = attend(q, sel, values);
            } else {
                GatheredTokens g =
                    gather_keys_values(stack, key_frames, value_frames, kernel, gi, gj);
                std::vector<std::vector<float>> keys, values;
                keys.reserve(pool_times.size());
                values.reserve(pool_times.size());
                for (int t : pool_times) {
                    const std::size_t i = static_cast<std::size_t>(t - g.oldest_time);
                    keys.push_back(std::move(g.keys[i]));
                    values.push_back(std::move(g.values[i]));
                }
                const AttentionSelection sel = select(q, keys);
                attended = attend(q, sel, values);
            }
            std::copy(attended.begin(), attended.end(), out_tokens.token(gi, gj).begin());
        }
    });
    return fold(out_tokens, h, w, kernel, kernel, 0);
}

FeatureMap concat_channels(const FeatureMap& a, const FeatureMap& b) {
    std::vector<float> data;
    data.reserve(a.size() + b.size());
    data.insert(data.end(), a.data().begin(), a.data().end());
    data.insert(data.end(), b.data().begin(), b.data().end());
    return FeatureMap(a.channels() + b.channels(), a.height(), a.width(), std::move(data));
}

// Attention features for one temporal direction, one C x H x W map per frame.
std::vector<FeatureMap> run_pass(std::span<const FeatureMap> frames, const WeightSet& w,
                                 const PipelineConfig& cfg,
                                 std::span<const Flow> external_flows) {
    const int h = frames[0].height();
    const int wdt = frames[0].width();
    const int base = cfg.token_kernel_coarse;
    LocationMapStack stack = LocationMapStack::initial(h, wdt, cfg.map_ring_limit);
    PassMemory mem;
    std::vector<FeatureMap> out;
    out.reserve(frames.size());

    for (std::size_t t = 0; t < frames.size(); ++t) {
        if (t > 0) {
            Flow flow = external_flows.empty()
                            ? block_match_flow(frames[t], frames[t - 1], cfg.flow_patch,
                                               cfg.flow_radius)
                            : external_flows[t - 1];
            const int factor = flow.height() / h;
            if (factor > 1) flow = pool_flow(flow, factor);
            stack.update(flow);
            mem.trim(stack.stored_count() - 1);
        }

        const FeatureMap phi = embed_features(frames[t], w, cfg, EmbedKind::phi);
        const FeatureMap varphi = embed_features(frames[t], w, cfg, EmbedKind::varphi);
        FeatureMap cs_phi = cross_scale_map(phi, cfg.cs_kernels, base);
        FeatureMap cs_varphi = cross_scale_map(varphi, cfg.cs_kernels, base);

        // Pool membership over stored past times (absolute indices).
        std::vector<int> fine_times, coarse_times;
        for (int pt = stack.oldest_time(); pt < static_cast<int>(t); ++pt) {
            if (pt >= static_cast<int>(t) - cfg.fine_window) fine_times.push_back(pt);
            if ((static_cast<int>(t) - 1 - pt) % cfg.coarse_interval == 0) {
                coarse_times.push_back(pt);
            }
        }

        const FeatureMap coarse = attend_pool(stack, mem.cs_keys, mem.cs_values, cs_phi,
                                              cs_varphi, base, coarse_times);
        const FeatureMap fine = attend_pool(stack, mem.keys, mem.values, phi, varphi,
                                            cfg.token_kernel_fine, fine_times);

        const FeatureMap mixed = detail::conv2d(concat_channels(coarse, fine),
                                                w.at("mix.weight"), w.at("mix.bias"));
        out.push_back(mixed);

        mem.keys.push_back(phi);
        mem.values.push_back(varphi);
        mem.cs_keys.push_back(std::move(cs_phi));
        mem.cs_values.push_back(std::move(cs_varphi));
    }
    return out;
}

} // namespace

std::vector<FeatureMap> run_sequence(std::span<const FeatureMap> frames,
                                     const WeightSet& w, const PipelineConfig& cfg,
                                     std::span<const Flow> external_flows) {
    if (frames.empty()) throw PreconditionError("run_sequence: need at least one frame");
    const int h = frames[0].height();
    const int wdt = frames[0].width();
    for (const FeatureMap& f : frames) {
        if (f.channels() != 3 || f.height() != h || f.width() != wdt) {
            throw SizeError("run_sequence: frames must share shape 3x" + std::to_string(h) +
                            "x" + std::to_string(wdt));
        }
    }
    if (h % cfg.token_kernel_coarse != 0 || wdt % cfg.token_kernel_coarse != 0 ||
        h % cfg.token_kernel_fine != 0 || wdt % cfg.token_kernel_fine != 0) {
        throw SizeError("run_sequence: token kernels " +
                        std::to_string(cfg.token_kernel_coarse) + "/" +
                        std::to_string(cfg.token_kernel_fine) + " must divide " +
                        std::to_string(h) + "x" + std::to_string(wdt));
    }
    if (cfg.fine_window < 1 || cfg.coarse_interval < 1) {
        throw PreconditionError("run_sequence: fine_window and coarse_interval must be >= 1");
    }
    if (!external_flows.empty() &&
        external_flows.size() != frames.size() - 1) {
        throw SizeError("run_sequence: need one external flow per step, got " +
                        std::to_string(external_flows.size()) + " for " +
                        std::to_string(frames.size()) + " frames");
    }
    if (!external_flows.empty() && cfg.bidirectional) {
        // Injected flows only describe t -> t-1; the reversed pass would
        // need the opposite direction.
        throw PreconditionError(
            "run_sequence: external flows are not supported with bidirectional");
    }

    const std::vector<FeatureMap> fwd = run_pass(frames, w, cfg, external_flows);
    std::vector<FeatureMap> fused;
    if (cfg.bidirectional) {
        std::vector<FeatureMap> rev_frames(frames.rbegin(), frames.rend());
        std::vector<FeatureMap> bwd = run_pass(rev_frames, w, cfg, {});
        std::reverse(bwd.begin(), bwd.end());
        fused.reserve(frames.size());
        for (std::size_t t = 0; t < frames.size(); ++t) {
            fused.push_back(concat_channels(fwd[t], bwd[t]));
        }
    } else {
        fused = fwd;
    }

    std::vector<FeatureMap> out;
    out.reserve(frames.size());
    for (std::size_t t = 0; t < frames.size(); ++t) {
        FeatureMap sr = reconstruct(fused[t], w, cfg);
        const FeatureMap up = bicubic_resize(frames[t], cfg.upscale, ResizeDir::up);
        for (std::size_t k = 0; k < sr.data().size(); ++k) sr.data()[k] += up.data()[k];
        sr.check_finite();
        out.push_back(std::move(sr));
    }
    return out;
}

double charbonnier(std::span<const FeatureMap> a, std::span<const FeatureMap> b) {
    if (a.size() != b.size() || a.empty()) {
        throw SizeError("charbonnier: sequence lengths differ or empty (" +
                        std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    constexpr double eps = 1e-8;
    double total = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t].size() != b[t].size()) {
            throw SizeError("charbonnier: frame " + std::to_string(t) + " shapes differ");
        }
        double sq = 0.0;
        for (std::size_t k = 0; k < a[t].size(); ++k) {
            const double d = static_cast<double>(a[t].data()[k]) - b[t].data()[k];
            sq += d * d;
        }
        total += std::sqrt(sq + eps * eps);
    }
    return total / static_cast<double>(a.size());
}

} // namespace ttvsr

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

#include "ttvsr/attention.hpp"
#include "ttvsr/bench.hpp"
#include "ttvsr/digest.hpp"
#include "ttvsr/image_io.hpp"
#include "ttvsr/metrics.hpp"
#include "ttvsr/motion.hpp"
#include "ttvsr/pipeline.hpp"
#include "ttvsr/synth.hpp"
#include "ttvsr/tensor_ops.hpp"
#include "ttvsr/tokenize.hpp"
#include "ttvsr/trajectory.hpp"
#include "ttvsr/weights.hpp"

namespace py = pybind11;
using namespace ttvsr;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

FeatureMap map_from_array(const FloatArray& a) {
    if (a.ndim() == 2) {
        std::vector<float> data(a.data(), a.data() + a.size());
        return FeatureMap(1, static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)),
                          std::move(data));
    }
    if (a.ndim() != 3) throw SizeError("expected a (C, H, W) array");
    std::vector<float> data(a.data(), a.data() + a.size());
    return FeatureMap(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)),
                      static_cast<int>(a.shape(2)), std::move(data));
}

py::array_t<float> array_from_map(const FeatureMap& f) {
    py::array_t<float> a({f.channels(), f.height(), f.width()});
    std::copy(f.data().begin(), f.data().end(), a.mutable_data());
    return a;
}

Flow flow_from_array(const FloatArray& a) {
    if (a.ndim() != 3 || a.shape(0) != 2) throw SizeError("expected a (2, H, W) array");
    const int h = static_cast<int>(a.shape(1));
    const int w = static_cast<int>(a.shape(2));
    const std::size_t plane = static_cast<std::size_t>(h) * w;
    std::vector<float> dr(a.data(), a.data() + plane);
    std::vector<float> dc(a.data() + plane, a.data() + 2 * plane);
    return Flow(h, w, std::move(dr), std::move(dc));
}

py::array_t<float> array_from_flow(const Flow& f) {
    py::array_t<float> a({2, f.height(), f.width()});
    auto* p = a.mutable_data();
    std::copy(f.rows().begin(), f.rows().end(), p);
    std::copy(f.cols().begin(), f.cols().end(), p + f.rows().size());
    return a;
}

std::vector<FeatureMap> maps_from_list(const std::vector<FloatArray>& frames) {
    std::vector<FeatureMap> out;
    out.reserve(frames.size());
    for (const auto& f : frames) out.push_back(map_from_array(f));
    return out;
}

py::array_t<float> array_from_tokens(const TokenGrid& tg) {
    py::array_t<float> a({tg.grid_h(), tg.grid_w(), tg.token_len()});
    std::copy(tg.data().begin(), tg.data().end(), a.mutable_data());
    return a;
}

py::array_t<float> trajectory_points(const Trajectory& t) {
    py::array_t<float> a({static_cast<int>(t.points.size()), 2});
    auto* p = a.mutable_data();
    for (const Coord& c : t.points) {
        *p++ = c.row;
        *p++ = c.col;
    }
    return a;
}

std::vector<float> token_from_array(const FloatArray& a) {
    return {a.data(), a.data() + a.size()};
}

std::vector<std::vector<float>> tokens_from_list(const std::vector<FloatArray>& xs) {
    std::vector<std::vector<float>> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(token_from_array(x));
    return out;
}

} // namespace

PYBIND11_MODULE(_ttvsr, m) {
    m.doc() = "Trajectory-aware attention video super-resolution core";

    py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<BoundsError>(m, "BoundsError", PyExc_IndexError);
    py::register_exception<LoadError>(m, "LoadError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    // tensor ops
    m.def(
        "unfold",
        [](const FloatArray& f, int kernel, int stride, int zero_pad) {
            return array_from_tokens(unfold(map_from_array(f), kernel, stride, zero_pad));
        },
        py::arg("f"), py::arg("kernel"), py::arg("stride"), py::arg("zero_pad") = 0);
    m.def(
        "fold",
        [](const FloatArray& tokens, int out_h, int out_w, int kernel, int stride,
           int zero_pad) {
            if (tokens.ndim() != 3) throw SizeError("expected a (gh, gw, len) array");
            TokenGrid tg(static_cast<int>(tokens.shape(0)),
                         static_cast<int>(tokens.shape(1)),
                         static_cast<int>(tokens.shape(2)), kernel, stride);
            std::copy(tokens.data(), tokens.data() + tokens.size(), tg.data().begin());
            return array_from_map(fold(tg, out_h, out_w, kernel, stride, zero_pad));
        },
        py::arg("tokens"), py::arg("out_h"), py::arg("out_w"), py::arg("kernel"),
        py::arg("stride"), py::arg("zero_pad") = 0);
    m.def(
        "avg_pool",
        [](const FloatArray& f, int kernel) {
            return array_from_map(avg_pool(map_from_array(f), kernel));
        },
        py::arg("f"), py::arg("kernel"));
    m.def(
        "bilinear_sample",
        [](const FloatArray& f, float row, float col) {
            return bilinear_sample(map_from_array(f), {row, col});
        },
        py::arg("f"), py::arg("row"), py::arg("col"));
    m.def(
        "bicubic_resize",
        [](const FloatArray& f, int factor, const std::string& direction) {
            const ResizeDir dir = direction == "up" ? ResizeDir::up : ResizeDir::down;
            return array_from_map(bicubic_resize(map_from_array(f), factor, dir));
        },
        py::arg("f"), py::arg("factor") = 4, py::arg("direction") = "up");
    m.def(
        "pixel_shuffle",
        [](const FloatArray& f, int r) {
            return array_from_map(pixel_shuffle(map_from_array(f), r));
        },
        py::arg("f"), py::arg("r"));

    // motion
    m.def(
        "block_match_flow",
        [](const FloatArray& cur, const FloatArray& prev, int patch, int radius) {
            return array_from_flow(
                block_match_flow(map_from_array(cur), map_from_array(prev), patch, radius));
        },
        py::arg("cur"), py::arg("prev"), py::arg("patch") = 5, py::arg("radius") = 3);
    m.def(
        "pool_flow",
        [](const FloatArray& flow, int factor) {
            return array_from_flow(pool_flow(flow_from_array(flow), factor));
        },
        py::arg("flow"), py::arg("factor"));
    m.def(
        "read_flo",
        [](const std::filesystem::path& path) { return array_from_flow(read_flo(path)); },
        py::arg("path"));
    m.def(
        "write_flo",
        [](const FloatArray& flow, const std::filesystem::path& path) {
            write_flo(flow_from_array(flow), path);
        },
        py::arg("flow"), py::arg("path"));

    // trajectories
    py::class_<LocationMapStack>(m, "LocationMapStack")
        .def_static(
            "initial",
            [](int h, int w, std::optional<int> ring_limit) {
                return LocationMapStack::initial(h, w, ring_limit);
            },
            py::arg("h"), py::arg("w"), py::arg("ring_limit") = std::nullopt)
        .def("update",
             [](LocationMapStack& s, const FloatArray& flow) {
                 s.update(flow_from_array(flow));
             })
        .def_property_readonly("current_time", &LocationMapStack::current_time)
        .def_property_readonly("oldest_time", &LocationMapStack::oldest_time)
        .def_property_readonly("stored_count", &LocationMapStack::stored_count)
        .def_property_readonly("sample_ops", &LocationMapStack::sample_ops)
        .def("map_at",
             [](const LocationMapStack& s, int t) {
                 const LocationMap& lm = s.map_at(t);
                 py::array_t<float> a({2, lm.height, lm.width});
                 auto* p = a.mutable_data();
                 std::copy(lm.row.begin(), lm.row.end(), p);
                 std::copy(lm.col.begin(), lm.col.end(), p + lm.row.size());
                 return a;
             })
        .def("trajectory_of", [](const LocationMapStack& s, int m, int n) {
            const Trajectory t = s.trajectory_of(m, n);
            return py::make_tuple(t.start_time, trajectory_points(t));
        });
    m.def(
        "oracle_track",
        [](const std::vector<FloatArray>& flows_newest_first, int m, int n) {
            std::vector<Flow> flows;
            flows.reserve(flows_newest_first.size());
            for (const auto& f : flows_newest_first) flows.push_back(flow_from_array(f));
            const Trajectory t = oracle_track(flows, m, n);
            return py::make_tuple(t.start_time, trajectory_points(t));
        },
        py::arg("flows_newest_first"), py::arg("m"), py::arg("n"));

    // tokenization
    m.def(
        "cross_scale_tokenize",
        [](const FloatArray& f, const std::vector<int>& kernels, int base) {
            return array_from_tokens(cross_scale_tokenize(map_from_array(f), kernels, base));
        },
        py::arg("f"), py::arg("kernels"), py::arg("base") = 4);
    m.def(
        "cross_scale_map",
        [](const FloatArray& f, const std::vector<int>& kernels, int base) {
            return array_from_map(cross_scale_map(map_from_array(f), kernels, base));
        },
        py::arg("f"), py::arg("kernels"), py::arg("base") = 4);
    m.def(
        "tokens_from_map_at",
        [](const FloatArray& f, const std::vector<std::pair<float, float>>& centers,
           int kernel) {
            std::vector<Coord> cs;
            cs.reserve(centers.size());
            for (auto& [r, c] : centers) cs.push_back({r, c});
            return tokens_from_map_at(map_from_array(f), cs, kernel);
        },
        py::arg("f"), py::arg("centers"), py::arg("kernel"));

    // attention
    m.def(
        "cosine_similarity",
        [](const FloatArray& q, const FloatArray& k) {
            return cosine_similarity(token_from_array(q), token_from_array(k));
        },
        py::arg("q"), py::arg("k"));
    m.def(
        "select",
        [](const FloatArray& q, const std::vector<FloatArray>& keys) {
            const AttentionSelection s = select(token_from_array(q), tokens_from_list(keys));
            return py::make_tuple(s.hard_index, s.soft_conf);
        },
        py::arg("q"), py::arg("keys"));
    m.def(
        "attend",
        [](const FloatArray& q, int hard_index, double soft_conf,
           const std::vector<FloatArray>& values) {
            return attend(token_from_array(q), {hard_index, soft_conf},
                          tokens_from_list(values));
        },
        py::arg("q"), py::arg("hard_index"), py::arg("soft_conf"), py::arg("values"));

    // pipeline configuration and weights
    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("upscale", &PipelineConfig::upscale)
        .def_readwrite("channels", &PipelineConfig::channels)
        .def_readwrite("extract_blocks", &PipelineConfig::extract_blocks)
        .def_readwrite("recon_blocks", &PipelineConfig::recon_blocks)
        .def_readwrite("token_kernel_coarse", &PipelineConfig::token_kernel_coarse)
        .def_readwrite("token_kernel_fine", &PipelineConfig::token_kernel_fine)
        .def_readwrite("fine_window", &PipelineConfig::fine_window)
        .def_readwrite("coarse_interval", &PipelineConfig::coarse_interval)
        .def_readwrite("cs_kernels", &PipelineConfig::cs_kernels)
        .def_readwrite("bidirectional", &PipelineConfig::bidirectional)
        .def_readwrite("seed", &PipelineConfig::seed)
        .def_readwrite("map_ring_limit", &PipelineConfig::map_ring_limit)
        .def_readwrite("flow_patch", &PipelineConfig::flow_patch)
        .def_readwrite("flow_radius", &PipelineConfig::flow_radius);
    m.def("test_config", &test_config);

    py::class_<WeightSet>(m, "WeightSet")
        .def("tensor_names",
             [](const WeightSet& w) {
                 std::vector<std::string> names;
                 for (const Tensor& t : w.tensors()) names.push_back(t.name);
                 return names;
             })
        .def("tensor", [](const WeightSet& w, const std::string& name) {
            const Tensor& t = w.at(name);
            py::array_t<float> a(t.data.size());
            std::copy(t.data.begin(), t.data.end(), a.mutable_data());
            std::vector<py::ssize_t> shape(t.dims.begin(), t.dims.end());
            return a.reshape(shape);
        });
    m.def("zero_weights", &zero_weights, py::arg("config"));
    m.def("seeded_weights", &seeded_weights, py::arg("config"), py::arg("seed"));
    m.def("load_weights", &load_weights, py::arg("path"), py::arg("config"));
    m.def("save_weights", &save_weights, py::arg("weights"), py::arg("path"));

    // pipeline
    m.def(
        "embed_features",
        [](const FloatArray& frame, const WeightSet& w, const PipelineConfig& cfg,
           const std::string& which) {
            const EmbedKind kind = which == "phi" ? EmbedKind::phi : EmbedKind::varphi;
            return array_from_map(embed_features(map_from_array(frame), w, cfg, kind));
        },
        py::arg("frame"), py::arg("weights"), py::arg("config"), py::arg("which") = "phi");
    m.def(
        "reconstruct",
        [](const FloatArray& feature, const WeightSet& w, const PipelineConfig& cfg) {
            return array_from_map(reconstruct(map_from_array(feature), w, cfg));
        },
        py::arg("feature"), py::arg("weights"), py::arg("config"));
    m.def(
        "run_sequence",
        [](const std::vector<FloatArray>& frames, const WeightSet& w,
           const PipelineConfig& cfg, const std::vector<FloatArray>& flows) {
            std::vector<Flow> fs;
            fs.reserve(flows.size());
            for (const auto& f : flows) fs.push_back(flow_from_array(f));
            const auto out = run_sequence(maps_from_list(frames), w, cfg, fs);
            std::vector<py::array_t<float>> res;
            res.reserve(out.size());
            for (const auto& f : out) res.push_back(array_from_map(f));
            return res;
        },
        py::arg("frames"), py::arg("weights"), py::arg("config"),
        py::arg("flows") = std::vector<FloatArray>{});
    m.def(
        "charbonnier",
        [](const std::vector<FloatArray>& a, const std::vector<FloatArray>& b) {
            return charbonnier(maps_from_list(a), maps_from_list(b));
        },
        py::arg("a"), py::arg("b"));

    // metrics
    m.def(
        "psnr",
        [](const FloatArray& a, const FloatArray& b, bool luma_only) {
            return psnr(map_from_array(a), map_from_array(b), luma_only);
        },
        py::arg("a"), py::arg("b"), py::arg("luma_only") = false);
    m.def(
        "ssim",
        [](const FloatArray& a, const FloatArray& b, bool luma_only) {
            return ssim(map_from_array(a), map_from_array(b), luma_only);
        },
        py::arg("a"), py::arg("b"), py::arg("luma_only") = false);

    // complexity accounting
    py::class_<AttnShape>(m, "AttnShape")
        .def(py::init([](int T, int C, int H, int W, int Dh, int Dw) {
                 AttnShape s{T, C, H, W, Dh, Dw};
                 s.validate();
                 return s;
             }),
             py::arg("T"), py::arg("C"), py::arg("H"), py::arg("W"), py::arg("Dh"),
             py::arg("Dw"))
        .def_readwrite("T", &AttnShape::T)
        .def_readwrite("C", &AttnShape::C)
        .def_readwrite("H", &AttnShape::H)
        .def_readwrite("W", &AttnShape::W)
        .def_readwrite("Dh", &AttnShape::Dh)
        .def_readwrite("Dw", &AttnShape::Dw);
    m.def("cost_vanilla", &cost_vanilla, py::arg("shape"));
    m.def("cost_trajectory", &cost_trajectory, py::arg("shape"));
    m.def(
        "measure_similarity_macs",
        [](const AttnShape& s, const std::string& path, std::uint32_t seed) {
            const AttnPath p =
                path == "trajectory" ? AttnPath::trajectory : AttnPath::vanilla;
            return measure_similarity_macs(s, p, seed);
        },
        py::arg("shape"), py::arg("path") = "trajectory", py::arg("seed") = 0);

    // synthetic data and image files
    m.def(
        "synth_sequence",
        [](const std::string& kind, int frames, int h, int w, std::uint32_t seed) {
            const auto seq = synth_sequence(synth_kind_from_name(kind), frames, h, w, seed);
            std::vector<py::array_t<float>> out;
            out.reserve(seq.size());
            for (const auto& f : seq) out.push_back(array_from_map(f));
            return out;
        },
        py::arg("kind"), py::arg("frames"), py::arg("h"), py::arg("w"),
        py::arg("seed") = 42);
    m.def(
        "read_png",
        [](const std::filesystem::path& p) { return array_from_map(read_png(p)); },
        py::arg("path"));
    m.def(
        "write_png",
        [](const std::filesystem::path& p, const FloatArray& rgb) {
            write_png(p, map_from_array(rgb));
        },
        py::arg("path"), py::arg("rgb"));
}

// Batch front end: synthetic sequence generation, super-resolution runs,
// trajectory inspection, and the attention-cost bench. Exit codes: 0 ok,
// 2 usage/input problem, 3 data-format problem.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ttvsr/bench.hpp"
#include "ttvsr/digest.hpp"
#include "ttvsr/image_io.hpp"
#include "ttvsr/metrics.hpp"
#include "ttvsr/pipeline.hpp"
#include "ttvsr/synth.hpp"
#include "ttvsr/trajectory.hpp"
#include "ttvsr/weights.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFormat = 3;

struct SizeArg {
    int h = 16;
    int w = 16;
};

SizeArg parse_size(const std::string& s) {
    SizeArg out;
    if (std::sscanf(s.c_str(), "%dx%d", &out.h, &out.w) != 2 || out.h < 1 || out.w < 1) {
        throw CLI::ValidationError("--size expects HxW, got " + s);
    }
    return out;
}

std::pair<int, int> parse_cell(const std::string& s) {
    int m = 0, n = 0;
    if (std::sscanf(s.c_str(), "%d,%d", &m, &n) != 2) {
        throw CLI::ValidationError("--cell expects m,n, got " + s);
    }
    return {m, n};
}

int cmd_synth(const std::string& kind_name, int frames, const std::string& size_s,
              unsigned seed, const std::string& out_dir) {
    if (frames < 1) {
        std::cerr << "synth: need >=1 frame\n";
        return kExitInput;
    }
    const SizeArg size = parse_size(size_s);
    const ttvsr::SynthKind kind = ttvsr::synth_kind_from_name(kind_name);
    const auto seq = ttvsr::synth_sequence(kind, frames, size.h, size.w, seed);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        std::cerr << "synth: cannot create " << out_dir << "\n";
        return kExitInput;
    }
    ttvsr::write_frame_dir(out_dir, seq);
    std::cout << "wrote " << seq.size() << " frames to " << out_dir << "\n";
    return kExitOk;
}

ttvsr::FeatureMap clamp01(ttvsr::FeatureMap f) {
    for (float& v : f.data()) v = std::clamp(v, 0.0f, 1.0f);
    return f;
}

int cmd_sr(const std::string& in_dir, const std::string& out_dir,
           const std::string& weights_path, const std::string& gt_dir,
           const std::string& flows_dir, bool golden_hash, ttvsr::PipelineConfig cfg) {
    const auto frames = ttvsr::read_frame_dir(in_dir);
    if (frames.empty()) {
        std::cerr << "sr: no frames under " << in_dir << "\n";
        return kExitInput;
    }

    ttvsr::WeightSet weights;
    if (!weights_path.empty()) {
        weights = ttvsr::load_weights(weights_path, cfg);
    } else {
        weights = ttvsr::seeded_weights(cfg, cfg.seed);
    }

    std::vector<ttvsr::Flow> flows;
    if (!flows_dir.empty()) {
        for (std::size_t t = 1; t < frames.size(); ++t) {
            char name[32];
            std::snprintf(name, sizeof(name), "flow_%05zu.flo", t);
            flows.push_back(ttvsr::read_flo(fs::path(flows_dir) / name));
        }
    }

    const auto sr = ttvsr::run_sequence(frames, weights, cfg, flows);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir)) {
        std::cerr << "sr: cannot create " << out_dir << "\n";
        return kExitInput;
    }

    std::vector<ttvsr::FeatureMap> clamped;
    clamped.reserve(sr.size());
    for (const auto& f : sr) clamped.push_back(clamp01(f));
    ttvsr::write_frame_dir(out_dir, clamped);

    if (!gt_dir.empty()) {
        const auto gt = ttvsr::read_frame_dir(gt_dir);
        if (gt.size() != sr.size()) {
            std::cerr << "sr: ground truth frame count " << gt.size()
                      << " does not match " << sr.size() << "\n";
            return kExitInput;
        }
        std::ofstream csv(fs::path(out_dir) / "metrics.csv");
        csv << "frame_index,psnr_db,ssim\n";
        for (std::size_t t = 0; t < sr.size(); ++t) {
            const double p = ttvsr::psnr(clamped[t], gt[t]);
            const double s = ttvsr::ssim(clamped[t], gt[t]);
            if (std::isinf(p)) csv << t << ",inf," << s << "\n";
            else csv << t << "," << p << "," << s << "\n";
        }
    }

    if (golden_hash) {
        ttvsr::Fnv1a64 h;
        for (const auto& f : clamped) {
            const auto bytes = ttvsr::quantize_rgb8(f);
            h.update(bytes.data(), bytes.size());
        }
        std::cout << h.hex() << "\n";
    }
    return kExitOk;
}

int cmd_traj(const std::string& in_dir, const std::string& cell_s,
             const std::string& out_path, int patch, int radius) {
    const auto frames = ttvsr::read_frame_dir(in_dir);
    if (frames.empty()) {
        std::cerr << "traj: no frames under " << in_dir << "\n";
        return kExitInput;
    }
    const auto [m, n] = parse_cell(cell_s);
    const int h = frames[0].height();
    const int w = frames[0].width();
    if (m < 0 || m >= h || n < 0 || n >= w) {
        std::cerr << "traj: cell " << m << "," << n << " outside " << h << "x" << w
                  << "\n";
        return kExitInput;
    }

    ttvsr::LocationMapStack stack = ttvsr::LocationMapStack::initial(h, w);
    std::vector<ttvsr::Flow> flows;
    for (std::size_t t = 1; t < frames.size(); ++t) {
        flows.push_back(ttvsr::block_match_flow(frames[t], frames[t - 1], patch, radius));
        stack.update(flows.back());
    }
    const ttvsr::Trajectory from_maps = stack.trajectory_of(m, n);
    const std::vector<ttvsr::Flow> newest_first(flows.rbegin(), flows.rend());
    const ttvsr::Trajectory from_oracle = ttvsr::oracle_track(newest_first, m, n);

    double max_gap = 0.0;
    for (std::size_t t = 0; t < from_maps.points.size(); ++t) {
        const double dr = from_maps.points[t].row - from_oracle.points[t].row;
        const double dc = from_maps.points[t].col - from_oracle.points[t].col;
        max_gap = std::max(max_gap, std::sqrt(dr * dr + dc * dc));
    }

    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "traj: cannot open " << out_path << "\n";
        return kExitInput;
    }
    os << "# location_map\n";
    char line[96];
    for (std::size_t t = 0; t < from_maps.points.size(); ++t) {
        std::snprintf(line, sizeof(line), "%d %.6f %.6f\n",
                      from_maps.start_time + static_cast<int>(t),
                      from_maps.points[t].row, from_maps.points[t].col);
        os << line;
    }
    os << "# oracle\n";
    for (std::size_t t = 0; t < from_oracle.points.size(); ++t) {
        std::snprintf(line, sizeof(line), "%d %.6f %.6f\n", static_cast<int>(t),
                      from_oracle.points[t].row, from_oracle.points[t].col);
        os << line;
    }
    std::snprintf(line, sizeof(line), "# max_gap %.6e\n", max_gap);
    os << line;
    std::cout << "max_gap " << max_gap << "\n";
    return kExitOk;
}

int cmd_bench(int T, int C, int H, int W, int Dh, int Dw, int random_shapes,
              unsigned seed, const std::string& out_path) {
    std::vector<ttvsr::AttnShape> shapes;
    shapes.push_back({T, C, H, W, Dh, Dw});
    std::mt19937 rng(seed);
    for (int i = 0; i < random_shapes; ++i) {
        ttvsr::AttnShape s;
        s.T = 1 + static_cast<int>(rng() % 12);
        s.C = 1 + static_cast<int>(rng() % 8);
        s.Dh = 1 + static_cast<int>(rng() % 4);
        s.Dw = 1 + static_cast<int>(rng() % 4);
        s.H = s.Dh * (1 + static_cast<int>(rng() % 6));
        s.W = s.Dw * (1 + static_cast<int>(rng() % 6));
        shapes.push_back(s);
    }

    std::ofstream csv(out_path);
    if (!csv) {
        std::cerr << "bench: cannot open " << out_path << "\n";
        return kExitInput;
    }
    csv << "T,C,H,W,Dh,Dw,vanilla_macs,traj_macs,ratio\n";
    for (const auto& s : shapes) {
        const std::uint64_t vanilla = ttvsr::cost_vanilla(s);
        const std::uint64_t traj = ttvsr::cost_trajectory(s);
        const std::uint64_t measured_v =
            ttvsr::measure_similarity_macs(s, ttvsr::AttnPath::vanilla, seed);
        const std::uint64_t measured_t =
            ttvsr::measure_similarity_macs(s, ttvsr::AttnPath::trajectory, seed);
        if (measured_v != vanilla || measured_t != traj) {
            std::cerr << "bench: measured MACs diverge from the closed form\n";
            return 1;
        }
        char ratio[32];
        std::snprintf(ratio, sizeof(ratio), "%g",
                      static_cast<double>(traj) / static_cast<double>(vanilla));
        csv << s.T << "," << s.C << "," << s.H << "," << s.W << "," << s.Dh << ","
            << s.Dw << "," << vanilla << "," << traj << "," << ratio << "\n";
    }
    std::cout << "wrote " << shapes.size() << " rows to " << out_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectory-aware attention video super-resolution toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic PNG sequence");
    std::string synth_kind = "pan", synth_size = "16x16", synth_out;
    int synth_frames = 5;
    unsigned synth_seed = 42;
    synth->add_option("--kind", synth_kind, "pan|zoom|static|noise");
    synth->add_option("--frames", synth_frames, "frame count");
    synth->add_option("--size", synth_size, "HxW");
    synth->add_option("--seed", synth_seed, "texture seed");
    synth->add_option("--out", synth_out, "output directory")->required();

    // sr
    auto* sr = app.add_subcommand("sr", "Super-resolve a PNG sequence x4");
    std::string sr_in, sr_out, sr_weights, sr_gt, sr_flows;
    bool sr_bidirectional = false, sr_golden = false;
    ttvsr::PipelineConfig cfg;
    sr->add_option("--in", sr_in, "input frame directory")->required();
    sr->add_option("--out", sr_out, "output directory")->required();
    sr->add_option("--weights", sr_weights, "TTWB weight file (default: seeded)");
    sr->add_option("--gt", sr_gt, "ground-truth directory for metrics.csv");
    sr->add_option("--flows", sr_flows, "directory of flow_%05d.flo overrides");
    sr->add_flag("--bidirectional", sr_bidirectional, "fuse forward and backward passes");
    sr->add_flag("--golden-hash", sr_golden, "print a digest of the outputs");
    sr->add_option("--seed", cfg.seed, "seed for generated weights");
    sr->add_option("--interval", cfg.coarse_interval, "coarse pool temporal interval");
    sr->add_option("--channels", cfg.channels, "feature channels");
    sr->add_option("--extract-blocks", cfg.extract_blocks, "embedding residual blocks");
    sr->add_option("--recon-blocks", cfg.recon_blocks, "reconstruction residual blocks");
    sr->add_option("--fine-window", cfg.fine_window, "frames served by 1x1 tokens");
    sr->add_option("--ring", [&cfg](const std::vector<std::string>& v) {
        cfg.map_ring_limit = std::stoi(v[0]);
        return true;
    }, "location-map ring limit");
    sr->add_option("--flow-patch", cfg.flow_patch, "block matching patch size");
    sr->add_option("--flow-radius", cfg.flow_radius, "block matching search radius");

    // traj
    auto* traj = app.add_subcommand("traj", "Dump a trajectory and its oracle");
    std::string traj_in, traj_cell, traj_out;
    int traj_patch = 5, traj_radius = 3;
    traj->add_option("--in", traj_in, "input frame directory")->required();
    traj->add_option("--cell", traj_cell, "end cell m,n")->required();
    traj->add_option("--out", traj_out, "output text file")->required();
    traj->add_option("--flow-patch", traj_patch, "block matching patch size");
    traj->add_option("--flow-radius", traj_radius, "block matching search radius");

    // bench
    auto* bench = app.add_subcommand("bench", "Attention cost report (CSV)");
    int b_T = 10, b_C = 4, b_H = 16, b_W = 16, b_Dh = 4, b_Dw = 4, b_random = 0;
    unsigned b_seed = 0;
    std::string bench_out;
    bench->add_option("--T", b_T);
    bench->add_option("--C", b_C);
    bench->add_option("--H", b_H);
    bench->add_option("--W", b_W);
    bench->add_option("--Dh", b_Dh);
    bench->add_option("--Dw", b_Dw);
    bench->add_option("--random", b_random, "additional randomized shapes");
    bench->add_option("--seed", b_seed);
    bench->add_option("--out", bench_out, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (synth->parsed()) {
            return cmd_synth(synth_kind, synth_frames, synth_size, synth_seed, synth_out);
        }
        if (sr->parsed()) {
            cfg.bidirectional = sr_bidirectional;
            return cmd_sr(sr_in, sr_out, sr_weights, sr_gt, sr_flows, sr_golden, cfg);
        }
        if (traj->parsed()) {
            return cmd_traj(traj_in, traj_cell, traj_out, traj_patch, traj_radius);
        }
        if (bench->parsed()) {
            return cmd_bench(b_T, b_C, b_H, b_W, b_Dh, b_Dw, b_random, b_seed, bench_out);
        }
    } catch (const ttvsr::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const ttvsr::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ttvsr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

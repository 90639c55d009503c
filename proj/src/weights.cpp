#include "ttvsr/weights.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

namespace ttvsr {

WeightSet::WeightSet(std::vector<Tensor> tensors) : tensors_(std::move(tensors)) {
    for (const Tensor& t : tensors_) {
        if (t.data.size() != t.element_count()) {
            throw LoadError("tensor " + t.name + " data length " +
                            std::to_string(t.data.size()) + " does not match its dims");
        }
    }
}

const Tensor& WeightSet::at(const std::string& name) const {
    for (const Tensor& t : tensors_) {
        if (t.name == name) return t;
    }
    throw LoadError("tensor " + name + " missing from weight set");
}

bool WeightSet::has(const std::string& name) const {
    for (const Tensor& t : tensors_) {
        if (t.name == name) return true;
    }
    return false;
}

std::vector<std::pair<std::string, std::vector<std::uint32_t>>> weight_schema(
    const PipelineConfig& cfg) {
    using Dims = std::vector<std::uint32_t>;
    std::vector<std::pair<std::string, Dims>> schema;
    const auto u = [](int v) { return static_cast<std::uint32_t>(v); };
    const std::uint32_t c = u(cfg.channels);

    auto add_embed = [&](const std::string& prefix, int blocks) {
        schema.emplace_back(prefix + ".conv_in.weight", Dims{c, 3, 3, 3});
        schema.emplace_back(prefix + ".conv_in.bias", Dims{c});
        for (int b = 0; b < blocks; ++b) {
            const std::string bp = prefix + ".block" + std::to_string(b);
            schema.emplace_back(bp + ".conv1.weight", Dims{c, c, 3, 3});
            schema.emplace_back(bp + ".conv1.bias", Dims{c});
            schema.emplace_back(bp + ".conv2.weight", Dims{c, c, 3, 3});
            schema.emplace_back(bp + ".conv2.bias", Dims{c});
        }
    };
    add_embed("phi", cfg.extract_blocks);
    add_embed("varphi", cfg.extract_blocks);

    // Two attention pools, each emitting [query || value] channels.
    schema.emplace_back("mix.weight", Dims{c, 4 * c, 1, 1});
    schema.emplace_back("mix.bias", Dims{c});

    const std::uint32_t rc = u(cfg.recon_in_channels());
    for (int b = 0; b < cfg.recon_blocks; ++b) {
        const std::string bp = "recon.block" + std::to_string(b);
        schema.emplace_back(bp + ".conv1.weight", Dims{rc, rc, 3, 3});
        schema.emplace_back(bp + ".conv1.bias", Dims{rc});
        schema.emplace_back(bp + ".conv2.weight", Dims{rc, rc, 3, 3});
        schema.emplace_back(bp + ".conv2.bias", Dims{rc});
    }
    const std::uint32_t out_c = u(3 * cfg.upscale * cfg.upscale);
    schema.emplace_back("recon.conv_out.weight", Dims{out_c, rc, 3, 3});
    schema.emplace_back("recon.conv_out.bias", Dims{out_c});
    return schema;
}

WeightSet zero_weights(const PipelineConfig& cfg) {
    std::vector<Tensor> ts;
    for (auto& [name, dims] : weight_schema(cfg)) {
        Tensor t;
        t.name = name;
        t.dims = dims;
        t.data.assign(t.element_count(), 0.0f);
        ts.push_back(std::move(t));
    }
    return WeightSet(std::move(ts));
}

namespace {

// Box-Muller over raw mt19937 draws; avoids the unspecified stdlib
// normal_distribution so seeded weights are stable across toolchains.
class NormalGen {
  public:
    explicit NormalGen(std::uint32_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(rng_()) + 0.5) / 4294967296.0;
        const double u2 = (static_cast<double>(rng_()) + 0.5) / 4294967296.0;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

WeightSet seeded_weights(const PipelineConfig& cfg, std::uint32_t seed) {
    NormalGen gen(seed);
    std::vector<Tensor> ts;
    for (auto& [name, dims] : weight_schema(cfg)) {
        Tensor t;
        t.name = name;
        t.dims = dims;
        t.data.resize(t.element_count());
        if (dims.size() == 1) {
            std::fill(t.data.begin(), t.data.end(), 0.0f); // biases
        } else {
            std::size_t fan_in = 1;
            for (std::size_t d = 1; d < dims.size(); ++d) fan_in *= dims[d];
            const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
            for (float& v : t.data) v = static_cast<float>(gen.next() * stddev);
        }
        ts.push_back(std::move(t));
    }
    return WeightSet(std::move(ts));
}

namespace {

constexpr char kWeightMagic[4] = {'T', 'T', 'W', 'B'};

void write_u32(std::ofstream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t read_u32(std::ifstream& is, const std::string& what) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), 4)) {
        throw LoadError("weight file truncated at " + what);
    }
    return v;
}

} // namespace

void save_weights(const WeightSet& w, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw LoadError("cannot open " + path.string() + " for writing");
    os.write(kWeightMagic, 4);
    write_u32(os, static_cast<std::uint32_t>(w.tensors().size()));
    for (const Tensor& t : w.tensors()) {
        write_u32(os, static_cast<std::uint32_t>(t.name.size()));
        os.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
        write_u32(os, static_cast<std::uint32_t>(t.dims.size()));
        for (auto d : t.dims) write_u32(os, d);
        os.write(reinterpret_cast<const char*>(t.data.data()),
                 static_cast<std::streamsize>(t.data.size() * sizeof(float)));
    }
    if (!os) throw LoadError("write failed for " + path.string());
}

WeightSet load_weights(const std::filesystem::path& path, const PipelineConfig& cfg) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw LoadError("cannot open " + path.string());
    char magic[4];
    if (!is.read(magic, 4)) throw LoadError("weight file truncated at magic");
    if (std::memcmp(magic, kWeightMagic, 4) != 0) throw LoadError("weight file bad magic");

    const auto schema = weight_schema(cfg);
    const std::uint32_t count = read_u32(is, "tensor count");
    if (count != schema.size()) {
        throw LoadError("weight file holds " + std::to_string(count) + " tensors, config expects " +
                        std::to_string(schema.size()));
    }

    std::vector<Tensor> ts;
    ts.reserve(count);
    for (std::uint32_t k = 0; k < count; ++k) {
        const std::string where = "tensor " + std::to_string(k);
        const std::uint32_t name_len = read_u32(is, where);
        std::string name(name_len, '\0');
        if (!is.read(name.data(), name_len)) throw LoadError("weight file truncated at " + where);
        const auto& [want_name, want_dims] = schema[k];
        if (name != want_name) {
            throw LoadError("unknown tensor name " + name + " at position " +
                            std::to_string(k) + " (expected " + want_name + ")");
        }
        Tensor t;
        t.name = name;
        const std::uint32_t ndim = read_u32(is, where);
        for (std::uint32_t d = 0; d < ndim; ++d) t.dims.push_back(read_u32(is, where));
        if (t.dims != want_dims) {
            throw LoadError("tensor " + name + " shape mismatch vs config");
        }
        t.data.resize(t.element_count());
        if (!is.read(reinterpret_cast<char*>(t.data.data()),
                     static_cast<std::streamsize>(t.data.size() * sizeof(float)))) {
            throw LoadError("weight file truncated at " + where + " (" + name + ")");
        }
        ts.push_back(std::move(t));
    }
    return WeightSet(std::move(ts));
}

} // namespace ttvsr

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ttvsr/config.hpp"
#include "ttvsr/error.hpp"

namespace ttvsr {

struct Tensor {
    std::string name;
    std::vector<std::uint32_t> dims;
    std::vector<float> data;

    std::size_t element_count() const {
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        return n;
    }
};

/// Named tensors for the embedding networks (phi shared by Q and K, varphi
/// for values), the attention mixing conv, and the reconstruction network.
/// Tensor order follows the schema implied by the config.
class WeightSet {
  public:
    WeightSet() = default;
    explicit WeightSet(std::vector<Tensor> tensors);

    const Tensor& at(const std::string& name) const;
    bool has(const std::string& name) const;
    const std::vector<Tensor>& tensors() const { return tensors_; }

  private:
    std::vector<Tensor> tensors_;
};

/// Expected (name, dims) pairs for a config, in file order.
std::vector<std::pair<std::string, std::vector<std::uint32_t>>> weight_schema(
    const PipelineConfig& cfg);

/// All-zero weights for the config.
WeightSet zero_weights(const PipelineConfig& cfg);

/// Deterministic He-style initialization: N(0, sqrt(2/fan_in)) via a fixed
/// Box-Muller transform over mt19937, zero biases.
WeightSet seeded_weights(const PipelineConfig& cfg, std::uint32_t seed);

/// Flat "TTWB" container: magic, u32 tensor count, then per tensor u32 name
/// length, name, u32 ndim, u32 dims..., LE float32 data. Round trips
/// bit-exact. Loading validates names and shapes against the config and
/// names the offending tensor on failure.
WeightSet load_weights(const std::filesystem::path& path, const PipelineConfig& cfg);
void save_weights(const WeightSet& w, const std::filesystem::path& path);

} // namespace ttvsr

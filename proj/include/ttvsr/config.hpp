#pragma once

#include <optional>
#include <vector>

namespace ttvsr {

/// Inference-pipeline shape and behavior knobs. Weight tensor shapes are a
/// function of this config; loaders validate against it.
struct PipelineConfig {
    int upscale = 4;
    int channels = 64;
    int extract_blocks = 5;
    int recon_blocks = 60;
    int token_kernel_coarse = 4;
    int token_kernel_fine = 1;
    int fine_window = 2;       // most-recent frames served by 1x1 tokens
    int coarse_interval = 3;   // temporal sampling interval for 4x4 tokens
    std::vector<int> cs_kernels = {4, 6, 8};
    bool bidirectional = false;
    unsigned seed = 0;
    std::optional<int> map_ring_limit;
    int flow_patch = 5;
    int flow_radius = 3;

    /// Channel width entering the reconstruction network: one attention
    /// feature per direction.
    int recon_in_channels() const { return channels * (bidirectional ? 2 : 1); }
};

/// Small configuration used by tests and golden files: 16 channels, two
/// residual blocks per network.
PipelineConfig test_config();

} // namespace ttvsr

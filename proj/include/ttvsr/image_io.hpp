#pragma once

#include <filesystem>
#include <vector>

#include "ttvsr/feature_map.hpp"

namespace ttvsr {

/// 8-bit RGB PNG <-> 3 x H x W float map in [0, 1]. Writing quantizes by
/// round(v * 255) after clamping; reading divides by 255.
void write_png(const std::filesystem::path& path, const FeatureMap& rgb);
FeatureMap read_png(const std::filesystem::path& path);

/// Quantized bytes of a frame, the exact payload write_png encodes.
std::vector<unsigned char> quantize_rgb8(const FeatureMap& rgb);

/// frame_%05d.png sequence helpers; read returns frames sorted by name.
void write_frame_dir(const std::filesystem::path& dir,
                     const std::vector<FeatureMap>& frames);
std::vector<FeatureMap> read_frame_dir(const std::filesystem::path& dir);

} // namespace ttvsr

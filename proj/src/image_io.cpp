#include "ttvsr/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include <png.h>

namespace ttvsr {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

std::vector<unsigned char> quantize_rgb8(const FeatureMap& rgb) {
    if (rgb.channels() != 3) {
        throw SizeError("quantize_rgb8: need 3 channels, got " +
                        std::to_string(rgb.channels()));
    }
    std::vector<unsigned char> bytes(static_cast<std::size_t>(rgb.height()) *
                                     rgb.width() * 3);
    std::size_t k = 0;
    for (int i = 0; i < rgb.height(); ++i) {
        for (int j = 0; j < rgb.width(); ++j) {
            for (int c = 0; c < 3; ++c, ++k) {
                const float v = std::clamp(rgb.at(c, i, j), 0.0f, 1.0f);
                bytes[k] = static_cast<unsigned char>(std::lround(v * 255.0f));
            }
        }
    }
    return bytes;
}

void write_png(const std::filesystem::path& path, const FeatureMap& rgb) {
    const auto bytes = quantize_rgb8(rgb);
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw FormatError("cannot open " + path.string() + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                              nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw FormatError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw FormatError("libpng write failed for " + path.string());
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(rgb.width()),
                 static_cast<png_uint_32>(rgb.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(rgb.width()) * 3;
    for (int i = 0; i < rgb.height(); ++i) {
        png_write_row(png, const_cast<png_bytep>(bytes.data() + i * stride));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

FeatureMap read_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw FormatError("cannot open " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                             nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("libpng read failed for " + path.string());
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    // Normalize any input to 8-bit RGB.
    png_set_strip_16(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
        png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int h = static_cast<int>(png_get_image_height(png, info));
    const int w = static_cast<int>(png_get_image_width(png, info));
    std::vector<unsigned char> row(static_cast<std::size_t>(w) * 3);
    std::vector<float> data(static_cast<std::size_t>(3) * h * w);
    for (int i = 0; i < h; ++i) {
        png_read_row(png, row.data(), nullptr);
        for (int j = 0; j < w; ++j) {
            for (int c = 0; c < 3; ++c) {
                data[(static_cast<std::size_t>(c) * h + i) * w + j] =
                    row[static_cast<std::size_t>(j) * 3 + c] / 255.0f;
            }
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return FeatureMap(3, h, w, std::move(data));
}

namespace {

std::string frame_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%05d.png", index);
    return buf;
}

} // namespace

void write_frame_dir(const std::filesystem::path& dir,
                     const std::vector<FeatureMap>& frames) {
    std::filesystem::create_directories(dir);
    for (std::size_t t = 0; t < frames.size(); ++t) {
        write_png(dir / frame_name(static_cast<int>(t)), frames[t]);
    }
}

std::vector<FeatureMap> read_frame_dir(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> paths;
    if (std::filesystem::is_directory(dir)) {
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            if (e.is_regular_file() && e.path().extension() == ".png") {
                paths.push_back(e.path());
            }
        }
    }
    std::sort(paths.begin(), paths.end());
    std::vector<FeatureMap> frames;
    frames.reserve(paths.size());
    for (const auto& p : paths) frames.push_back(read_png(p));
    return frames;
}

} // namespace ttvsr

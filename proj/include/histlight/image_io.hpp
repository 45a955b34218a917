#pragma once

#include <filesystem>

#include "histlight/imgproc.hpp"

namespace histlight {

// PNG or JPEG in (grayscale and alpha inputs are reduced to 8-bit RGB).
RgbImage read_image(const std::filesystem::path& path);

// Format follows the extension; .png is the supported output.
void write_image(const std::filesystem::path& path, const RgbImage& img);

}  // namespace histlight

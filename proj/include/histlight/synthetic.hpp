#pragma once

#include <cstdint>

#include "histlight/imgproc.hpp"

namespace histlight {

// Deterministic low-light test scene: a smooth, dim illumination blob times a
// tiled, colored reflectance pattern, plus mild sensor noise.
RgbImage synthetic_low_light_scene(int width, int height, std::uint32_t seed);

}  // namespace histlight

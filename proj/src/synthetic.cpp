#include "histlight/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace histlight {

namespace {

// std::mt19937 output is fixed by the standard; the distributions are not, so
// the uniform draw is done by hand.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}
  double uniform() { return engine_() / 4294967296.0; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Irwin-Hall approximation of a unit normal.
  double normal() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += uniform();
    return s - 6.0;
  }

 private:
  std::mt19937 engine_;
};

}  // namespace

RgbImage synthetic_low_light_scene(int width, int height, std::uint32_t seed) {
  Rng rng(seed);
  const double cx = rng.uniform(0.0, width);
  const double cy = rng.uniform(0.0, height);
  const double spread = rng.uniform(0.2, 0.5) * std::max(width, height);
  const double peak = rng.uniform(0.2, 0.3);
  const double ambient = rng.uniform(0.05, 0.1);
  const int tile_w = std::max(2, static_cast<int>(width * rng.uniform(0.05, 0.15)));
  const int tile_h = std::max(2, static_cast<int>(height * rng.uniform(0.05, 0.15)));
  const double hue_base = rng.uniform(0.0, 360.0);

  HsvImage hsv;
  hsv.width = width;
  hsv.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  hsv.h.resize(n);
  hsv.s.resize(n);
  hsv.v.resize(n);

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * width + x;
      const double dx = x - cx;
      const double dy = y - cy;
      const double light =
          ambient + peak * std::exp(-(dx * dx + dy * dy) / (2.0 * spread * spread));
      const int tile = (x / tile_w + 2 * (y / tile_h)) % 3;
      const double texture = 0.85 + 0.15 * std::sin(x / 7.0 + y / 11.0);
      const double reflect = (0.3 + 0.35 * tile) * texture;
      const double v = reflect * light + rng.normal() * (2.0 / 255.0);
      hsv.v[p] = std::clamp(v, 0.0, 1.0);
      hsv.h[p] = std::fmod(hue_base + 40.0 * tile, 360.0);
      hsv.s[p] = 0.25 + 0.15 * tile;
    }
  }
  return hsv_to_rgb(hsv);
}

}  // namespace histlight

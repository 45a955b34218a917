#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "histlight/hist_core.hpp"
#include "histlight/reprocess.hpp"
#include "histlight/retinex_opt.hpp"
#include "histlight/value_channel.hpp"

namespace histlight {

// Interleaved 8-bit RGB, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(int w, int h);
  RgbImage(int w, int h, std::vector<std::uint8_t> data);

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  std::uint8_t* at(int x, int y) {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }

  bool operator==(const RgbImage&) const = default;
};

// h in [0, 360), s and v in [0, 1].
struct HsvImage {
  int width = 0;
  int height = 0;
  std::vector<double> h;
  std::vector<double> s;
  std::vector<double> v;
};

HsvImage rgb_to_hsv(const RgbImage& img);
RgbImage hsv_to_rgb(const HsvImage& img);

// level = round(v * (l - 1)), halves away from zero.
ValueChannel quantize_value_channel(const HsvImage& img, int levels);

enum class GradientOperator {
  // |S(x+1,y) - S(x,y)| + |S(x,y+1) - S(x,y)|, zero difference past the
  // last row/column.
  ForwardL1,
  // (|Gx| + |Gy|) / 8 with replicated borders.
  Sobel,
};

// Gradient magnitude image, clamped to [0, l - 1].
ValueChannel gradient_channel(const ValueChannel& s,
                              GradientOperator op = GradientOperator::ForwardL1);

// m(v) = smallest k minimizing |CDF_target(k) - CDF_source(v)|.
std::vector<int> matching_map(const CountHistogram& source,
                              const CountHistogram& target);

ValueChannel histogram_match(const ValueChannel& s, const CountHistogram& target);

// t_i = round((l - 1) * CDF(i)).
std::vector<int> equalization_map(const CountHistogram& h);

ValueChannel histogram_equalize(const ValueChannel& s);

// Wall time of each pipeline stage in milliseconds.
struct StageTimings {
  double histogramming = 0.0;  // color conversion, quantization, gradient, counts
  double decompose = 0.0;
  double reprocess = 0.0;
  double matching = 0.0;  // histogram matching and conversion back to RGB
  double total = 0.0;
};

struct EnhanceResult {
  RgbImage image;
  DecompositionResult decomposition;
  CountHistogram source;
  CountHistogram gradient;
  CountHistogram target;  // enhanced histogram the value channel is matched to
  StageTimings timings;
};

EnhanceResult enhance_detailed(const RgbImage& img, const OptParams& params,
                               const GammaParam& g,
                               GradientOperator op = GradientOperator::ForwardL1);

RgbImage enhance(const RgbImage& img, const OptParams& params,
                 const GammaParam& g);

RgbImage resize_nearest(const RgbImage& img, int width, int height);

}  // namespace histlight

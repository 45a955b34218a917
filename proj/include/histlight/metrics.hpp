#pragma once

#include <limits>

#include "histlight/imgproc.hpp"

namespace histlight {

// Reported in text output in place of an infinite PSNR.
inline constexpr double kPsnrCap = 99.0;

struct MetricReport {
  double psnr = 0.0;  // +inf for identical images
  double ssim = 0.0;
  double loe = 0.0;
};

// 10 log10(255^2 / MSE) over all three channels; +inf when MSE == 0.
double psnr(const RgbImage& a, const RgbImage& b);

// Single-scale SSIM on luma (0.299 R + 0.587 G + 0.114 B) with an 11x11
// Gaussian window (sigma 1.5), averaged over all fully-contained windows.
double ssim(const RgbImage& a, const RgbImage& b);

// Lightness-order error. Lightness is the per-pixel max over RGB; both
// images are nearest-neighbor sampled down to at most 100x100 and the result
// is the number of ordered pixel pairs whose (>=) relation flips, divided by
// the number of sampled pixels.
double loe(const RgbImage& original, const RgbImage& enhanced);

MetricReport evaluate(const RgbImage& reference, const RgbImage& candidate);

// psnr with +inf replaced by kPsnrCap.
inline double capped_psnr(double value) {
  return value > kPsnrCap ? kPsnrCap : value;
}

}  // namespace histlight

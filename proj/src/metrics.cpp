#include "histlight/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace histlight {

namespace {

void require_same_size(const RgbImage& a, const RgbImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error("images have different dimensions");
  }
}

std::vector<double> luma(const RgbImage& img) {
  std::vector<double> y(img.pixel_count());
  for (std::size_t p = 0; p < y.size(); ++p) {
    y[p] = 0.299 * img.pixels[3 * p] + 0.587 * img.pixels[3 * p + 1] +
           0.114 * img.pixels[3 * p + 2];
  }
  return y;
}

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;

std::vector<double> gaussian_kernel() {
  std::vector<double> k(kWindow);
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    k[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable 'valid' filtering: output is (w - 10) x (h - 10).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::vector<double>& k) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) {
        acc += k[t] * src[static_cast<std::size_t>(y) * w + x + t];
      }
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) {
        acc += k[t] * rows[static_cast<std::size_t>(y + t) * ow + x];
      }
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

std::vector<double> product(const std::vector<double>& a,
                            const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace

double psnr(const RgbImage& a, const RgbImage& b) {
  require_same_size(a, b);
  double sse = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const RgbImage& a, const RgbImage& b) {
  require_same_size(a, b);
  if (a.width < kWindow || a.height < kWindow) {
    throw Error("image too small for SSIM (min side 11)");
  }
  const int w = a.width;
  const int h = a.height;
  const std::vector<double> k = gaussian_kernel();
  const std::vector<double> x = luma(a);
  const std::vector<double> y = luma(b);

  const std::vector<double> mu_x = filter_valid(x, w, h, k);
  const std::vector<double> mu_y = filter_valid(y, w, h, k);
  const std::vector<double> e_xx = filter_valid(product(x, x), w, h, k);
  const std::vector<double> e_yy = filter_valid(product(y, y), w, h, k);
  const std::vector<double> e_xy = filter_valid(product(x, y), w, h, k);

  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  const double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double vx = e_xx[i] - mx * mx;
    const double vy = e_yy[i] - my * my;
    const double cxy = e_xy[i] - mx * my;
    sum += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
           ((mx * mx + my * my + c1) * (vx + vy + c2));
  }
  return sum / static_cast<double>(mu_x.size());
}

namespace {

constexpr int kLoeSide = 100;

std::vector<int> sampled_lightness(const RgbImage& img, int sw, int sh) {
  std::vector<int> out(static_cast<std::size_t>(sw) * sh);
  for (int y = 0; y < sh; ++y) {
    const int sy =
        std::min(static_cast<int>((y + 0.5) * img.height / sh), img.height - 1);
    for (int x = 0; x < sw; ++x) {
      const int sx =
          std::min(static_cast<int>((x + 0.5) * img.width / sw), img.width - 1);
      const std::uint8_t* p = img.at(sx, sy);
      out[static_cast<std::size_t>(y) * sw + x] = std::max({p[0], p[1], p[2]});
    }
  }
  return out;
}

}  // namespace

double loe(const RgbImage& original, const RgbImage& enhanced) {
  require_same_size(original, enhanced);
  const double scale =
      std::min(1.0, static_cast<double>(kLoeSide) /
                        std::max(original.width, original.height));
  const int sw = std::max(1, static_cast<int>(std::lround(original.width * scale)));
  const int sh = std::max(1, static_cast<int>(std::lround(original.height * scale)));
  const std::vector<int> lo = sampled_lightness(original, sw, sh);
  const std::vector<int> le = sampled_lightness(enhanced, sw, sh);

  // Joint 256x256 lightness table with 2-D prefix sums: for pixel x,
  //   #{y : L(y) <= L(x)}, #{y : L'(y) <= L'(x)} and their intersection
  // give the number of flipped relations by inclusion-exclusion.
  constexpr int kLevels = 256;
  std::vector<std::int64_t> table(kLevels * kLevels, 0);
  for (std::size_t p = 0; p < lo.size(); ++p) ++table[lo[p] * kLevels + le[p]];
  for (int a = 0; a < kLevels; ++a) {
    for (int b = 0; b < kLevels; ++b) {
      std::int64_t v = table[a * kLevels + b];
      if (a > 0) v += table[(a - 1) * kLevels + b];
      if (b > 0) v += table[a * kLevels + b - 1];
      if (a > 0 && b > 0) v -= table[(a - 1) * kLevels + b - 1];
      table[a * kLevels + b] = v;
    }
  }

  std::int64_t flips = 0;
  for (std::size_t p = 0; p < lo.size(); ++p) {
    const std::int64_t below_orig = table[lo[p] * kLevels + (kLevels - 1)];
    const std::int64_t below_enh = table[(kLevels - 1) * kLevels + le[p]];
    const std::int64_t below_both = table[lo[p] * kLevels + le[p]];
    flips += below_orig + below_enh - 2 * below_both;
  }
  return static_cast<double>(flips) / static_cast<double>(lo.size());
}

MetricReport evaluate(const RgbImage& reference, const RgbImage& candidate) {
  return MetricReport{psnr(reference, candidate), ssim(reference, candidate),
                      loe(reference, candidate)};
}

}  // namespace histlight

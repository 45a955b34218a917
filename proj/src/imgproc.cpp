#include "histlight/imgproc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace histlight {

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) throw Error("image dimensions must be positive");
  pixels.assign(3 * pixel_count(), 0);
}

RgbImage::RgbImage(int w, int h, std::vector<std::uint8_t> data)
    : width(w), height(h), pixels(std::move(data)) {
  if (w < 1 || h < 1) throw Error("image dimensions must be positive");
  if (pixels.size() != 3 * pixel_count()) {
    throw Error("pixel buffer does not match image dimensions");
  }
}

HsvImage rgb_to_hsv(const RgbImage& img) {
  HsvImage out;
  out.width = img.width;
  out.height = img.height;
  const std::size_t n = img.pixel_count();
  out.h.resize(n);
  out.s.resize(n);
  out.v.resize(n);

  for (std::size_t p = 0; p < n; ++p) {
    const double r = img.pixels[3 * p] / 255.0;
    const double g = img.pixels[3 * p + 1] / 255.0;
    const double b = img.pixels[3 * p + 2] / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;

    double h = 0.0;
    if (delta > 0.0) {
      if (mx == r) {
        h = 60.0 * std::fmod((g - b) / delta, 6.0);
      } else if (mx == g) {
        h = 60.0 * ((b - r) / delta + 2.0);
      } else {
        h = 60.0 * ((r - g) / delta + 4.0);
      }
      if (h < 0.0) h += 360.0;
      if (h >= 360.0) h -= 360.0;
    }
    out.h[p] = h;
    out.s[p] = mx > 0.0 ? delta / mx : 0.0;
    out.v[p] = mx;
  }
  return out;
}

namespace {

std::uint8_t to_byte(double unit) {
  const long v = std::lround(unit * 255.0);
  return static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
}

}  // namespace

RgbImage hsv_to_rgb(const HsvImage& img) {
  RgbImage out(img.width, img.height);
  const std::size_t n = out.pixel_count();
  if (img.h.size() != n || img.s.size() != n || img.v.size() != n) {
    throw Error("hsv planes do not match image dimensions");
  }

  for (std::size_t p = 0; p < n; ++p) {
    const double v = img.v[p];
    const double s = img.s[p];
    double r = v, g = v, b = v;
    if (s > 0.0) {
      double hh = img.h[p];
      if (hh >= 360.0 || hh < 0.0) hh = 0.0;
      hh /= 60.0;
      const int sector = static_cast<int>(hh);
      const double f = hh - sector;
      const double lo = v * (1.0 - s);
      const double fall = v * (1.0 - s * f);
      const double rise = v * (1.0 - s * (1.0 - f));
      switch (sector) {
        case 0: r = v; g = rise; b = lo; break;
        case 1: r = fall; g = v; b = lo; break;
        case 2: r = lo; g = v; b = rise; break;
        case 3: r = lo; g = fall; b = v; break;
        case 4: r = rise; g = lo; b = v; break;
        default: r = v; g = lo; b = fall; break;
      }
    }
    out.pixels[3 * p] = to_byte(r);
    out.pixels[3 * p + 1] = to_byte(g);
    out.pixels[3 * p + 2] = to_byte(b);
  }
  return out;
}

ValueChannel quantize_value_channel(const HsvImage& img, int levels) {
  if (levels < 2) throw Error("levels must be >= 2");
  std::vector<int> data(img.v.size());
  const double scale = levels - 1;
  for (std::size_t p = 0; p < data.size(); ++p) {
    const long q = std::lround(img.v[p] * scale);
    data[p] = static_cast<int>(std::clamp(q, 0L, static_cast<long>(levels - 1)));
  }
  return ValueChannel(img.width, img.height, levels, std::move(data));
}

ValueChannel gradient_channel(const ValueChannel& s, GradientOperator op) {
  const int w = s.width;
  const int h = s.height;
  const int top = s.levels - 1;
  std::vector<int> out(s.data.size(), 0);

  if (op == GradientOperator::ForwardL1) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int c = s.at(x, y);
        const int dx = x + 1 < w ? s.at(x + 1, y) - c : 0;
        const int dy = y + 1 < h ? s.at(x, y + 1) - c : 0;
        out[static_cast<std::size_t>(y) * w + x] =
            std::min(std::abs(dx) + std::abs(dy), top);
      }
    }
  } else {
    auto px = [&](int x, int y) {
      return s.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
    };
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int gx = px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1) -
                       px(x - 1, y - 1) - 2 * px(x - 1, y) - px(x - 1, y + 1);
        const int gy = px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1) -
                       px(x - 1, y - 1) - 2 * px(x, y - 1) - px(x + 1, y - 1);
        out[static_cast<std::size_t>(y) * w + x] =
            std::min((std::abs(gx) + std::abs(gy) + 4) / 8, top);
      }
    }
  }
  return ValueChannel(w, h, s.levels, std::move(out));
}

namespace {

std::vector<double> cumulative(const std::vector<double>& bins, double mass) {
  std::vector<double> cdf(bins.size());
  double run = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    run += bins[k];
    cdf[k] = run / mass;
  }
  return cdf;
}

std::vector<int> apply_map(const std::vector<int>& map,
                           const std::vector<int>& levels) {
  std::vector<int> out(levels.size());
  for (std::size_t p = 0; p < levels.size(); ++p) out[p] = map[levels[p]];
  return out;
}

}  // namespace

std::vector<int> matching_map(const CountHistogram& source,
                              const CountHistogram& target) {
  if (source.levels() != target.levels()) {
    throw Error("source and target histograms have different level counts");
  }
  const double src_mass = source.mass();
  const double tgt_mass = target.mass();
  if (!(tgt_mass > 0.0)) throw Error("degenerate target histogram");
  if (!(src_mass > 0.0)) throw Error("degenerate source histogram");
  if (std::abs(tgt_mass - src_mass) > 1e-6 * src_mass) {
    throw Error("target histogram mass does not match the pixel count");
  }

  const std::vector<double> cs = cumulative(source.bins(), src_mass);
  const std::vector<double> ct = cumulative(target.bins(), tgt_mass);
  const int l = source.levels();
  std::vector<int> map(l, 0);
  for (int v = 0; v < l; ++v) {
    int best = 0;
    double best_d = std::abs(ct[0] - cs[v]);
    for (int k = 1; k < l; ++k) {
      const double d = std::abs(ct[k] - cs[v]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    map[v] = best;
  }
  return map;
}

ValueChannel histogram_match(const ValueChannel& s, const CountHistogram& target) {
  if (target.levels() != s.levels) {
    throw Error("target histogram has a different level count");
  }
  const CountHistogram source = compute_count_histogram(s, s.levels);
  const std::vector<int> map = matching_map(source, target);
  return ValueChannel(s.width, s.height, s.levels, apply_map(map, s.data));
}

std::vector<int> equalization_map(const CountHistogram& h) {
  const std::vector<double> p = normalize_to_probability(h);
  const int l = h.levels();
  std::vector<int> map(l);
  double run = 0.0;
  for (int i = 0; i < l; ++i) {
    run += p[i];
    const long t = std::lround((l - 1) * run);
    map[i] = static_cast<int>(std::clamp(t, 0L, static_cast<long>(l - 1)));
  }
  return map;
}

ValueChannel histogram_equalize(const ValueChannel& s) {
  const std::vector<int> map = equalization_map(compute_count_histogram(s, s.levels));
  return ValueChannel(s.width, s.height, s.levels, apply_map(map, s.data));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double, std::milli>(to - from).count();
}

}  // namespace

EnhanceResult enhance_detailed(const RgbImage& img, const OptParams& params,
                               const GammaParam& g, GradientOperator op) {
  params.validate();
  g.validate();
  const int l = params.levels;

  const auto t0 = Clock::now();
  HsvImage hsv = rgb_to_hsv(img);
  const ValueChannel value = quantize_value_channel(hsv, l);
  const ValueChannel grad = gradient_channel(value, op);
  CountHistogram source = compute_count_histogram(value, l);
  CountHistogram gradient = compute_count_histogram(grad, l);
  const auto t1 = Clock::now();

  DecompositionResult dec = decompose(source, gradient, params);
  const auto t2 = Clock::now();

  CountHistogram target = reprocess(dec, g);
  const auto t3 = Clock::now();

  const ValueChannel matched = histogram_match(value, target);
  const double scale = l - 1;
  for (std::size_t p = 0; p < matched.data.size(); ++p) {
    hsv.v[p] = matched.data[p] / scale;
  }
  RgbImage out = hsv_to_rgb(hsv);
  const auto t4 = Clock::now();

  StageTimings timings;
  timings.histogramming = elapsed_ms(t0, t1);
  timings.decompose = elapsed_ms(t1, t2);
  timings.reprocess = elapsed_ms(t2, t3);
  timings.matching = elapsed_ms(t3, t4);
  timings.total = elapsed_ms(t0, t4);

  return EnhanceResult{std::move(out),      std::move(dec),    std::move(source),
                       std::move(gradient), std::move(target), timings};
}

RgbImage enhance(const RgbImage& img, const OptParams& params,
                 const GammaParam& g) {
  return enhance_detailed(img, params, g).image;
}

RgbImage resize_nearest(const RgbImage& img, int width, int height) {
  RgbImage out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(
        static_cast<int>((y + 0.5) * img.height / height), img.height - 1);
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(
          static_cast<int>((x + 0.5) * img.width / width), img.width - 1);
      std::copy_n(img.at(sx, sy), 3, out.at(x, y));
    }
  }
  return out;
}

}  // namespace histlight

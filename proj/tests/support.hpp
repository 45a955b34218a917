#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing in
// here calls into the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "histlight/hist_core.hpp"
#include "histlight/imgproc.hpp"
#include "histlight/synthetic.hpp"

namespace histlight::testing {

// Low-light scenes used wherever a criterion says "on fixtures".
inline std::vector<RgbImage> fixture_images() {
  return {
      synthetic_low_light_scene(320, 240, 1),
      synthetic_low_light_scene(320, 240, 2),
      synthetic_low_light_scene(256, 256, 3),
      synthetic_low_light_scene(200, 300, 4),
      synthetic_low_light_scene(300, 200, 5),
  };
}

inline double mean_value_level(const RgbImage& img) {
  double sum = 0.0;
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    sum += std::max({img.pixels[3 * p], img.pixels[3 * p + 1], img.pixels[3 * p + 2]});
  }
  return sum / static_cast<double>(img.pixel_count());
}

// Random integer-valued histogram with `levels` bins, each in [0, cap].
inline std::vector<double> random_bins(std::mt19937& rng, int levels, int cap) {
  std::uniform_int_distribution<int> d(0, cap);
  std::vector<double> b(levels);
  for (double& v : b) v = d(rng);
  return b;
}

// Distribute `total` unit masses over `levels` bins with at most `cap` each.
inline std::vector<double> random_bins_with_total(std::mt19937& rng, int levels,
                                                  int cap, int total) {
  std::vector<double> b(levels, 0.0);
  std::uniform_int_distribution<int> pick(0, levels - 1);
  for (int placed = 0; placed < total;) {
    const int k = pick(rng);
    if (b[k] < cap) {
      b[k] += 1.0;
      ++placed;
    }
  }
  return b;
}

// Random real histogram summing exactly to `total` up to rounding.
inline CountHistogram random_histogram(std::mt19937& rng, int levels, double total) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> b(levels);
  double s = 0.0;
  for (double& v : b) {
    v = d(rng);
    s += v;
  }
  for (double& v : b) v *= total / s;
  return CountHistogram(std::move(b), total);
}

// argmin_k |value - locs[k]| by linear scan, lowest k on ties.
inline int brute_nearest(const std::vector<double>& locs, double value) {
  int best = 0;
  double best_d = std::abs(value - locs[0]);
  for (std::size_t k = 1; k < locs.size(); ++k) {
    const double d = std::abs(value - locs[k]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

// Exhaustive recomposition: for every (i, j) compute b_i * b_j on uniform
// locations, snap to the nearest level and accumulate r_i * l_j / N.
inline std::vector<double> enumerate_estimate(const std::vector<double>& refl,
                                              const std::vector<double>& illum,
                                              double n) {
  const int l = static_cast<int>(refl.size());
  std::vector<double> locs(l);
  for (int k = 0; k < l; ++k) locs[k] = static_cast<double>(k) / (l - 1);
  std::vector<double> out(l, 0.0);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      out[brute_nearest(locs, locs[i] * locs[j])] += refl[i] * illum[j] / n;
    }
  }
  return out;
}

// Golden-section minimization of a unimodal function on [lo, hi].
inline double golden_section_min(const std::function<double(double)>& f, double lo,
                                 double hi, int iterations = 200) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// J written out term by term from its definition.
inline double naive_objective(const std::vector<double>& refl,
                              const std::vector<double>& illum,
                              const std::vector<double>& source,
                              const std::vector<double>& gradient,
                              const WeightMatrix& w, const IndexMap& idx, double n,
                              double alpha, double beta) {
  const int l = static_cast<int>(source.size());
  double j_total = 0.0;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      const double composed = refl[i] * illum[j] / n;
      const double wanted = w(i, j) * source[idx(i, j)];
      j_total += (composed - wanted) * (composed - wanted);
    }
  }
  for (int j = 0; j < l; ++j) j_total += alpha * std::pow(illum[j] - source[j], 2);
  for (int i = 0; i < l; ++i) j_total += beta * std::pow(refl[i] - gradient[i], 2);
  return j_total;
}

// Per-level pixel count by direct scan.
inline std::vector<double> count_levels(const std::vector<int>& values, int levels) {
  std::vector<double> out(levels, 0.0);
  for (int v : values) out[v] += 1.0;
  return out;
}

}  // namespace histlight::testing

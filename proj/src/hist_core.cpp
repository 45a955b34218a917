#include "histlight/hist_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace histlight {

CountHistogram::CountHistogram(std::vector<double> bins, double total)
    : bins_(std::move(bins)), total_(total) {
  if (bins_.empty()) throw Error("histogram must have at least one bin");
  if (!std::isfinite(total_) || total_ < 0.0) {
    throw Error("histogram total must be finite and non-negative");
  }
  for (double b : bins_) {
    if (!std::isfinite(b) || b < 0.0) {
      throw Error("histogram bins must be finite and non-negative");
    }
  }
}

double CountHistogram::mass() const {
  return std::accumulate(bins_.begin(), bins_.end(), 0.0);
}

bool CountHistogram::is_normalized() const {
  return std::abs(mass() - total_) <= 1e-6 * total_;
}

LocationVector::LocationVector(std::vector<double> locs) : locs_(std::move(locs)) {
  if (locs_.empty()) throw Error("location vector must not be empty");
  for (std::size_t k = 0; k < locs_.size(); ++k) {
    if (!(locs_[k] >= 0.0 && locs_[k] <= 1.0)) {
      throw Error("locations must lie in [0, 1]");
    }
    if (k > 0 && !(locs_[k - 1] < locs_[k])) {
      throw Error("locations must be strictly increasing");
    }
  }
}

double PairMatrix::sum() const {
  const auto& d = cells.data();
  return std::accumulate(d.begin(), d.end(), 0.0);
}

CountHistogram compute_count_histogram(const ValueChannel& channel, int levels) {
  if (channel.data.empty()) throw Error("empty input");
  if (levels < 1) throw Error("levels must be positive");
  std::vector<std::int64_t> counts(levels, 0);
  for (int v : channel.data) {
    if (v < 0 || v >= levels) throw Error("channel level out of range");
    ++counts[v];
  }
  std::vector<double> bins(counts.begin(), counts.end());
  return CountHistogram(std::move(bins),
                        static_cast<double>(channel.data.size()));
}

std::vector<double> normalize_to_probability(const CountHistogram& h) {
  if (!(h.total() > 0.0)) throw Error("histogram total must be positive");
  std::vector<double> p(h.bins());
  for (double& v : p) v /= h.total();
  return p;
}

LocationVector uniform_locations(int levels) {
  if (levels < 2) throw Error("uniform locations need at least 2 levels");
  std::vector<double> locs(levels);
  const double denom = static_cast<double>(levels - 1);
  for (int k = 0; k < levels; ++k) locs[k] = k / denom;
  return LocationVector(std::move(locs));
}

PairMatrix pair_count_matrix(const CountHistogram& reflectance,
                             const CountHistogram& illumination) {
  if (reflectance.levels() != illumination.levels()) {
    throw Error("histograms have different level counts");
  }
  if (reflectance.total() != illumination.total()) {
    throw Error("histograms have different pixel totals");
  }
  const double n = reflectance.total();
  if (!(n > 0.0)) throw Error("histogram total must be positive");

  const int l = reflectance.levels();
  PairMatrix m{SquareGrid<double>(l, 0.0), PairKind::Count, n};
  for (int i = 0; i < l; ++i) {
    const double r = reflectance[i];
    for (int j = 0; j < l; ++j) m.cells(i, j) = r * illumination[j] / n;
  }
  return m;
}

PairMatrix pair_location_matrix(const LocationVector& reflectance,
                                const LocationVector& illumination) {
  if (reflectance.levels() != illumination.levels()) {
    throw Error("location vectors have different lengths");
  }
  const int l = reflectance.levels();
  PairMatrix m{SquareGrid<double>(l, 0.0), PairKind::Location, 0.0};
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) m.cells(i, j) = reflectance[i] * illumination[j];
  }
  return m;
}

int nearest_level(std::span<const double> locs, double value) {
  const auto it = std::lower_bound(locs.begin(), locs.end(), value);
  if (it == locs.begin()) return 0;
  const int hi = static_cast<int>(it - locs.begin());
  if (it == locs.end()) return hi - 1;
  const double below = std::abs(value - locs[hi - 1]);
  const double above = std::abs(value - locs[hi]);
  return below <= above ? hi - 1 : hi;
}

IndexMap build_index_map(const PairMatrix& locations,
                         const LocationVector& target) {
  if (locations.kind != PairKind::Location) {
    throw Error("index map needs a location matrix");
  }
  if (locations.levels() != target.levels()) {
    throw Error("location matrix and target have different level counts");
  }
  const int l = locations.levels();
  IndexMap map{SquareGrid<int>(l, 0)};
  const std::span<const double> locs(target.values());
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) map.idx(i, j) = nearest_level(locs, locations(i, j));
  }
  return map;
}

namespace {

void check_same_levels(const PairMatrix& counts, const IndexMap& index) {
  if (counts.kind != PairKind::Count) throw Error("expected a count matrix");
  if (counts.levels() != index.levels()) {
    throw Error("count matrix and index map have different level counts");
  }
}

// Row-major accumulation; summation order is part of the contract so that
// results are bit-reproducible.
std::vector<double> accumulate_by_index(const PairMatrix& counts,
                                        const IndexMap& index) {
  const int l = counts.levels();
  std::vector<double> out(l, 0.0);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) out[index(i, j)] += counts(i, j);
  }
  return out;
}

}  // namespace

WeightMatrix compute_weights(const PairMatrix& counts, const IndexMap& index) {
  check_same_levels(counts, index);
  const int l = counts.levels();
  const std::vector<double> mass = accumulate_by_index(counts, index);
  WeightMatrix k{SquareGrid<double>(l, 0.0)};
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      const double denom = mass[index(i, j)];
      k.w(i, j) = denom > 0.0 ? counts(i, j) / denom : 0.0;
    }
  }
  return k;
}

CountHistogram estimate_histogram(const PairMatrix& counts,
                                  const IndexMap& index) {
  check_same_levels(counts, index);
  return CountHistogram(accumulate_by_index(counts, index), counts.total);
}

}  // namespace histlight

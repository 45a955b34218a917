#pragma once

// Histogram-domain primitives for the histogram Retinex model.
//
// A channel S is summarized by a count histogram H_C(S) (pixel mass per gray
// level) and a location vector H_B(S) (the normalized intensity each level
// stands for). Illumination and reflectance histograms are combined through
// two l x l matrices: the pair-count matrix (expected pixel mass for every
// reflectance/illumination level pair, assuming independence) and the
// pair-location matrix (the composed intensity of that pair). Each cell of
// the location matrix is snapped to its nearest output level, which yields
// the index map; summing pair counts per output level recomposes H_C(S).
//
// Orientation is fixed everywhere: row i = reflectance level, column j =
// illumination level.

#include <span>
#include <vector>

#include "histlight/error.hpp"
#include "histlight/grid.hpp"
#include "histlight/value_channel.hpp"

namespace histlight {

class CountHistogram {
 public:
  CountHistogram() = default;
  // `total` is the declared pixel count N; bins need not sum to it.
  CountHistogram(std::vector<double> bins, double total);

  int levels() const { return static_cast<int>(bins_.size()); }
  double total() const { return total_; }
  const std::vector<double>& bins() const { return bins_; }
  double operator[](int k) const { return bins_[k]; }

  // Sum of the bin masses.
  double mass() const;
  // |mass - N| <= 1e-6 N.
  bool is_normalized() const;

  bool operator==(const CountHistogram&) const = default;

 private:
  std::vector<double> bins_;
  double total_ = 0.0;
};

class LocationVector {
 public:
  LocationVector() = default;
  // Values must lie in [0, 1] and be strictly increasing.
  explicit LocationVector(std::vector<double> locs);

  int levels() const { return static_cast<int>(locs_.size()); }
  const std::vector<double>& values() const { return locs_; }
  double operator[](int k) const { return locs_[k]; }

  bool operator==(const LocationVector&) const = default;

 private:
  std::vector<double> locs_;
};

enum class PairKind { Count, Location };

struct PairMatrix {
  SquareGrid<double> cells;
  PairKind kind = PairKind::Count;
  // Declared pixel count N of the histograms a Count matrix was built from.
  double total = 0.0;

  int levels() const { return cells.size(); }
  double operator()(int i, int j) const { return cells(i, j); }
  double sum() const;
};

// Target output level for every (reflectance, illumination) cell.
struct IndexMap {
  SquareGrid<int> idx;

  int levels() const { return idx.size(); }
  int operator()(int i, int j) const { return idx(i, j); }
  bool operator==(const IndexMap&) const = default;
};

// K_ij: a cell's share of the mass landing on its target level.
struct WeightMatrix {
  SquareGrid<double> w;

  int levels() const { return w.size(); }
  double operator()(int i, int j) const { return w(i, j); }
};

CountHistogram compute_count_histogram(const ValueChannel& channel, int levels);

std::vector<double> normalize_to_probability(const CountHistogram& h);

// locs[k] = k / (l - 1).
LocationVector uniform_locations(int levels);

// cells(i, j) = hR[i] * hL[j] / N.
PairMatrix pair_count_matrix(const CountHistogram& reflectance,
                             const CountHistogram& illumination);

// cells(i, j) = bR[i] * bL[j].
PairMatrix pair_location_matrix(const LocationVector& reflectance,
                                const LocationVector& illumination);

// Nearest level of `target` for each cell; ties resolve to the lower level.
IndexMap build_index_map(const PairMatrix& locations,
                         const LocationVector& target);

// Index of the entry of `locs` nearest to `value`, lower index on ties.
int nearest_level(std::span<const double> locs, double value);

WeightMatrix compute_weights(const PairMatrix& counts, const IndexMap& index);

// Mass of the count matrix accumulated per target level.
CountHistogram estimate_histogram(const PairMatrix& counts,
                                  const IndexMap& index);

}  // namespace histlight

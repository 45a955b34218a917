#pragma once

// Histogram-domain brightening: lift the illumination level locations by the
// power 1/gamma, re-snap every (reflectance, illumination) pair to its nearest
// output level and redistribute the converged pair counts accordingly.

#include "histlight/hist_core.hpp"
#include "histlight/retinex_opt.hpp"

namespace histlight {

struct GammaParam {
  double gamma = 2.2;

  // gamma >= 1; values below 1 would darken and are rejected.
  void validate() const;
};

LocationVector gamma_locations(const LocationVector& illumination,
                               const GammaParam& g);

// cells(i, j) = bR[i] * lifted_bL[j], same orientation as the unadjusted
// location matrix.
PairMatrix adjusted_pair_location_matrix(const LocationVector& lifted_illumination,
                                         const LocationVector& reflectance);

IndexMap build_enhanced_index_map(const PairMatrix& adjusted_locations,
                                  const LocationVector& target);

CountHistogram enhanced_histogram(const PairMatrix& counts,
                                  const IndexMap& enhanced_index);

// Whole stage on uniform level locations: returns H_C of the enhanced image.
CountHistogram reprocess(const DecompositionResult& decomposition,
                         const GammaParam& g);

}  // namespace histlight

#include "histlight/reprocess.hpp"

#include <cmath>

namespace histlight {

void GammaParam::validate() const {
  if (!std::isfinite(gamma) || gamma < 1.0) throw Error("gamma must be >= 1");
}

LocationVector gamma_locations(const LocationVector& illumination,
                               const GammaParam& g) {
  g.validate();
  const double exponent = 1.0 / g.gamma;
  std::vector<double> out(illumination.values());
  for (double& v : out) v = std::pow(v, exponent);
  return LocationVector(std::move(out));
}

PairMatrix adjusted_pair_location_matrix(const LocationVector& lifted_illumination,
                                         const LocationVector& reflectance) {
  return pair_location_matrix(reflectance, lifted_illumination);
}

IndexMap build_enhanced_index_map(const PairMatrix& adjusted_locations,
                                  const LocationVector& target) {
  return build_index_map(adjusted_locations, target);
}

CountHistogram enhanced_histogram(const PairMatrix& counts,
                                  const IndexMap& enhanced_index) {
  return estimate_histogram(counts, enhanced_index);
}

CountHistogram reprocess(const DecompositionResult& decomposition,
                         const GammaParam& g) {
  const int l = decomposition.illumination.levels();
  const LocationVector locs = uniform_locations(l);
  const LocationVector lifted = gamma_locations(locs, g);
  const IndexMap index =
      build_enhanced_index_map(adjusted_pair_location_matrix(lifted, locs), locs);
  const PairMatrix counts =
      pair_count_matrix(decomposition.reflectance, decomposition.illumination);
  return enhanced_histogram(counts, index);
}

}  // namespace histlight

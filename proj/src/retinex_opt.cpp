#include "histlight/retinex_opt.hpp"

#include <algorithm>
#include <cmath>

namespace histlight {

std::string to_string(UpdateForm form) {
  return form == UpdateForm::GradientConsistent ? "gradient" : "paper";
}

UpdateForm parse_update_form(const std::string& name) {
  if (name == "gradient") return UpdateForm::GradientConsistent;
  if (name == "paper") return UpdateForm::InverseWeight;
  throw Error("unknown update form '" + name + "' (expected gradient|paper)");
}

void OptParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("alpha must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error("beta must be > 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error("epsilon must be > 0");
  }
  if (max_iter < 1) throw Error("max-iter must be >= 1");
  if (levels < 2) throw Error("levels must be >= 2");
  if (!(init_floor >= 0.0 && init_floor < 1.0)) {
    throw Error("init floor must lie in [0, 1)");
  }
}

namespace {

void require_compatible(const CountHistogram& a, const CountHistogram& b) {
  if (a.levels() != b.levels()) throw Error("histogram level counts differ");
  if (a.total() != b.total()) throw Error("histogram totals differ");
}

void require_compatible(const CountHistogram& h, const WeightMatrix& w,
                        const IndexMap& index) {
  if (w.levels() != h.levels() || index.levels() != h.levels()) {
    throw Error("weights or index map do not match the histogram levels");
  }
}

double sum_of_squares(const CountHistogram& h) {
  double s = 0.0;
  for (double v : h.bins()) s += v * v;
  return s;
}

double squared_change(const CountHistogram& a, const CountHistogram& b) {
  double s = 0.0;
  for (int k = 0; k < a.levels(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

// Shared closed form for both blocks. `other` is the held-fixed factor,
// `prior` the histogram the block is pulled toward with weight `lambda`.
// With transpose=false the free index is the row i (reflectance); with
// transpose=true it is the column j (illumination).
std::vector<double> block_update(const CountHistogram& other,
                                 const CountHistogram& source,
                                 const CountHistogram& prior,
                                 const WeightMatrix& weights,
                                 const IndexMap& index, double lambda,
                                 UpdateForm form, bool transpose) {
  const int l = source.levels();
  const double n = source.total();
  std::vector<double> numer(l, 0.0);

  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      const int free = transpose ? j : i;
      const double o = transpose ? other[i] : other[j];
      const double k = weights(i, j);
      const double s = source[index(i, j)];
      if (form == UpdateForm::GradientConsistent) {
        numer[free] += o * k * s;
      } else if (k > 0.0) {
        numer[free] += o * s / k;
      }
    }
  }

  const double denom = sum_of_squares(other) / (n * n) + lambda;
  std::vector<double> out(l);
  for (int f = 0; f < l; ++f) {
    const double v = (numer[f] / n + lambda * prior[f]) / denom;
    out[f] = std::isfinite(v) ? std::max(v, 0.0) : 0.0;
  }
  return out;
}

CountHistogram mix_with_uniform(const CountHistogram& h, double floor) {
  const double n = h.total();
  const double share = n / h.levels();
  std::vector<double> bins(h.bins());
  for (double& b : bins) b = (1.0 - floor) * b + floor * share;
  return CountHistogram(std::move(bins), n);
}

}  // namespace

double objective(const CountHistogram& reflectance,
                 const CountHistogram& illumination,
                 const CountHistogram& source,
                 const CountHistogram& gradient, const WeightMatrix& weights,
                 const IndexMap& index, const OptParams& params) {
  require_compatible(reflectance, illumination);
  require_compatible(reflectance, source);
  require_compatible(reflectance, gradient);
  require_compatible(source, weights, index);

  const int l = source.levels();
  const double n = source.total();
  double fidelity = 0.0;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      const double d = reflectance[i] * illumination[j] / n -
                       weights(i, j) * source[index(i, j)];
      fidelity += d * d;
    }
  }
  double illum_prior = 0.0;
  double refl_prior = 0.0;
  for (int k = 0; k < l; ++k) {
    const double dl = illumination[k] - source[k];
    const double dr = reflectance[k] - gradient[k];
    illum_prior += dl * dl;
    refl_prior += dr * dr;
  }
  return fidelity + params.alpha * illum_prior + params.beta * refl_prior;
}

CountHistogram update_illumination(const CountHistogram& reflectance,
                                   const CountHistogram& source,
                                   const WeightMatrix& weights,
                                   const IndexMap& index,
                                   const OptParams& params) {
  require_compatible(reflectance, source);
  require_compatible(source, weights, index);
  return CountHistogram(block_update(reflectance, source, source, weights, index,
                                     params.alpha, params.update_form, true),
                        source.total());
}

CountHistogram update_reflectance(const CountHistogram& illumination,
                                  const CountHistogram& source,
                                  const CountHistogram& gradient,
                                  const WeightMatrix& weights,
                                  const IndexMap& index,
                                  const OptParams& params) {
  require_compatible(illumination, source);
  require_compatible(gradient, source);
  require_compatible(source, weights, index);
  return CountHistogram(block_update(illumination, source, gradient, weights,
                                     index, params.beta, params.update_form,
                                     false),
                        source.total());
}

CountHistogram renormalize(const CountHistogram& h) {
  const double mass = h.mass();
  if (!(mass > 0.0)) throw Error("degenerate histogram");
  std::vector<double> bins(h.bins());
  for (double& b : bins) b = h.total() * b / mass;
  return CountHistogram(std::move(bins), h.total());
}

DecompositionResult decompose(const CountHistogram& source,
                              const CountHistogram& gradient,
                              const OptParams& params) {
  params.validate();
  require_compatible(source, gradient);
  if (source.levels() != params.levels) {
    throw Error("histogram level count does not match the parameters");
  }
  if (!(source.total() > 0.0)) throw Error("histogram total must be positive");

  const int l = source.levels();
  const double n = source.total();
  const double threshold = params.epsilon * n * n;

  const LocationVector locs = uniform_locations(l);
  IndexMap index = build_index_map(pair_location_matrix(locs, locs), locs);

  CountHistogram refl = mix_with_uniform(renormalize(gradient), params.init_floor);
  CountHistogram illum = mix_with_uniform(renormalize(source), params.init_floor);
  WeightMatrix weights = compute_weights(pair_count_matrix(refl, illum), index);

  DecompositionResult result;
  while (result.iterations < params.max_iter) {
    IterationRecord rec;
    rec.before = objective(refl, illum, source, gradient, weights, index, params);

    CountHistogram next_refl =
        update_reflectance(illum, source, gradient, weights, index, params);
    rec.after_reflectance =
        objective(next_refl, illum, source, gradient, weights, index, params);

    CountHistogram next_illum =
        update_illumination(next_refl, source, weights, index, params);
    rec.after_illumination = objective(next_refl, next_illum, source, gradient,
                                       weights, index, params);

    next_refl = renormalize(next_refl);
    next_illum = renormalize(next_illum);
    rec.delta_reflectance = squared_change(next_refl, refl);
    rec.delta_illumination = squared_change(next_illum, illum);

    refl = std::move(next_refl);
    illum = std::move(next_illum);
    weights = compute_weights(pair_count_matrix(refl, illum), index);

    result.objective_trace.push_back(rec.after_reflectance);
    result.objective_trace.push_back(rec.after_illumination);
    result.steps.push_back(rec);
    ++result.iterations;

    if (rec.delta_reflectance <= threshold &&
        rec.delta_illumination <= threshold) {
      break;
    }
  }

  result.illumination = std::move(illum);
  result.reflectance = std::move(refl);
  result.weights = std::move(weights);
  result.index = std::move(index);
  return result;
}

FrozenSolution solve_frozen_weights(const CountHistogram& source,
                                    const CountHistogram& gradient,
                                    CountHistogram reflectance,
                                    CountHistogram illumination,
                                    const WeightMatrix& weights,
                                    const IndexMap& index,
                                    const OptParams& params, int max_sweeps,
                                    double tolerance) {
  FrozenSolution sol{std::move(illumination), std::move(reflectance), 0};
  while (sol.sweeps < max_sweeps) {
    CountHistogram refl = update_reflectance(sol.illumination, source, gradient,
                                             weights, index, params);
    CountHistogram illum =
        update_illumination(refl, source, weights, index, params);
    double change = 0.0;
    for (int k = 0; k < source.levels(); ++k) {
      change = std::max(change, std::abs(refl[k] - sol.reflectance[k]));
      change = std::max(change, std::abs(illum[k] - sol.illumination[k]));
    }
    sol.reflectance = std::move(refl);
    sol.illumination = std::move(illum);
    ++sol.sweeps;
    if (change <= tolerance) break;
  }
  return sol;
}

}  // namespace histlight

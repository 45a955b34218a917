#pragma once

// Alternating minimization of the histogram Retinex objective
//
//   J(hR, hL) = sum_ij (hR_i hL_j / N - K_ij hS_idx(i,j))^2
//             + alpha sum_j (hL_j - hS_j)^2
//             + beta  sum_i (hR_i - hG_i)^2
//
// where hS is the value-channel histogram, hG the gradient-image histogram,
// idx the nearest-level index map of the composed locations and K the
// per-cell share of each target level's mass. For fixed K both blocks are
// separable quadratics, so each update is a closed-form block minimizer.

#include <string>
#include <vector>

#include "histlight/hist_core.hpp"

namespace histlight {

enum class UpdateForm {
  // Stationary point of J: K_ij multiplies the target in the numerator.
  GradientConsistent,
  // Closed form with K_ij in a denominator (CLI name "paper"); cells with K_ij == 0
  // are skipped. Not guaranteed to descend J.
  InverseWeight,
};

std::string to_string(UpdateForm form);
UpdateForm parse_update_form(const std::string& name);

struct OptParams {
  double alpha = 1e-3;
  double beta = 1e-4;
  // Stop once both squared histogram changes are <= epsilon * N^2.
  double epsilon = 1e-6;
  int max_iter = 10;
  int levels = 256;
  UpdateForm update_form = UpdateForm::GradientConsistent;
  // Fraction of uniform mass mixed into the initial histograms. The updates
  // are multiplicative in the current support, so a level that starts empty
  // stays empty; 0 reproduces the bare initialization.
  double init_floor = 0.1;

  void validate() const;
};

// Objective values recorded around the two block updates of one iteration,
// all with that iteration's weights frozen.
struct IterationRecord {
  double before = 0.0;
  double after_reflectance = 0.0;
  double after_illumination = 0.0;
  double delta_reflectance = 0.0;  // squared change after renormalization
  double delta_illumination = 0.0;
};

struct DecompositionResult {
  CountHistogram illumination;
  CountHistogram reflectance;
  // J after every block update, two entries per iteration.
  std::vector<double> objective_trace;
  std::vector<IterationRecord> steps;
  int iterations = 0;
  // Weights refreshed from the returned histograms.
  WeightMatrix weights;
  IndexMap index;
};

double objective(const CountHistogram& reflectance,
                 const CountHistogram& illumination,
                 const CountHistogram& source,
                 const CountHistogram& gradient, const WeightMatrix& weights,
                 const IndexMap& index, const OptParams& params);

CountHistogram update_illumination(const CountHistogram& reflectance,
                                   const CountHistogram& source,
                                   const WeightMatrix& weights,
                                   const IndexMap& index,
                                   const OptParams& params);

CountHistogram update_reflectance(const CountHistogram& illumination,
                                  const CountHistogram& source,
                                  const CountHistogram& gradient,
                                  const WeightMatrix& weights,
                                  const IndexMap& index,
                                  const OptParams& params);

// Rescale so the bins sum to the declared total.
CountHistogram renormalize(const CountHistogram& h);

DecompositionResult decompose(const CountHistogram& source,
                              const CountHistogram& gradient,
                              const OptParams& params);

struct FrozenSolution {
  CountHistogram illumination;
  CountHistogram reflectance;
  int sweeps = 0;
};

// Alternate the two block updates with K held fixed (no renormalization)
// until the largest per-bin change drops below `tolerance`. The limit is a
// stationary point of J for the GradientConsistent form.
FrozenSolution solve_frozen_weights(const CountHistogram& source,
                                    const CountHistogram& gradient,
                                    CountHistogram reflectance,
                                    CountHistogram illumination,
                                    const WeightMatrix& weights,
                                    const IndexMap& index,
                                    const OptParams& params, int max_sweeps,
                                    double tolerance);

}  // namespace histlight

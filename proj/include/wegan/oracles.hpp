#pragma once

// Straightforward reference computations used by the check suite and the
// tests. They deliberately avoid the shortcuts of the production code
// (no symmetry, no shifted exponents, no cached activations).

#include <span>
#include <vector>

#include "wegan/batch.hpp"
#include "wegan/metrics.hpp"
#include "wegan/nn.hpp"

namespace wegan::oracle {

/// Double loop over every pair with an explicit kernel call.
double naive_mmd2(const Batch& x, const Batch& y, double sigma, MmdEstimator estimator);

/// pow(eta, 1 - d_i) / sum_j pow(eta, 1 - d_j).
std::vector<double> direct_wegan_weights(std::span<const double> d, double eta);

/// Evaluates both sides of the weighted-vs-uniform generator-term
/// inequality directly and returns uniform - weighted.
double direct_margin(std::span<const double> d, double eta);

/// Central finite differences of sum_r <coeffs.row(r), mlp(batch).row(r)>
/// with respect to every parameter.
std::vector<double> finite_difference_gradient(const Mlp& mlp, const Batch& batch, const Batch& coeffs, double h);

/// Same, with respect to the inputs.
Batch finite_difference_input_gradient(const Mlp& mlp, const Batch& batch, const Batch& coeffs, double h);

/// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor)
double max_relative_error(std::span<const double> a, std::span<const double> b, double floor = 1e-6);

}  // namespace wegan::oracle

#pragma once

// Exponentiated-gradient (mirror) ascent over the probability simplex.
// Shared by the variational identities and the Renyi rate-distortion optimizer.

#include <functional>
#include <span>
#include <vector>

namespace taskcode::detail {

// Returns f(point) and writes the gradient (any additive constant is fine,
// the update is invariant to it). Coordinates that start at zero stay zero.
using SimplexObjective = std::function<double(std::span<const double>, std::vector<double>&)>;

struct AscentOptions {
  int max_iterations = 5000;
  double tolerance = 1e-15;  // accepted gain below which an iterate counts as stationary
  double initial_step = 1.0;
  int patience = 3;          // consecutive stationary steps before stopping
};

struct AscentResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

AscentResult exponentiated_gradient_ascent(const SimplexObjective& f, std::vector<double> start,
                                           const AscentOptions& opts);

// log-sum-exp of the given natural-log terms; -inf for an empty range.
double log_sum_exp(std::span<const double> terms);

}  // namespace taskcode::detail

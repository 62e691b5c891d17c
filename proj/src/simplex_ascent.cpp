#include "simplex_ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace taskcode::detail {

double log_sum_exp(std::span<const double> terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

AscentResult exponentiated_gradient_ascent(const SimplexObjective& f, std::vector<double> start,
                                           const AscentOptions& opts) {
  const std::size_t n = start.size();
  AscentResult res;
  res.point = std::move(start);
  std::vector<double> grad(n), cand(n), cand_grad(n);
  res.value = f(res.point, grad);

  double step = opts.initial_step;
  int quiet = 0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    double gmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (res.point[i] > 0.0) gmax = std::max(gmax, grad[i]);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cand[i] = res.point[i] > 0.0 ? res.point[i] * std::exp(step * (grad[i] - gmax)) : 0.0;
      total += cand[i];
    }
    for (double& v : cand) v /= total;

    const double value = f(cand, cand_grad);
    if (value >= res.value) {
      const double gain = value - res.value;
      res.point.swap(cand);
      grad.swap(cand_grad);
      res.value = value;
      step = std::min(step * 1.5, 1e6);
      quiet = gain <= opts.tolerance * std::max(1.0, std::abs(value)) ? quiet + 1 : 0;
      if (quiet >= opts.patience) {
        res.converged = true;
        return res;
      }
    } else {
      step *= 0.5;
      if (step < 1e-14) {
        // No ascent direction left at machine precision.
        res.converged = true;
        return res;
      }
    }
  }
  return res;
}

}  // namespace taskcode::detail

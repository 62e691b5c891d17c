#include "taskcode/renyi.hpp"

#include "simplex_ascent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace taskcode {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("rho must be a positive finite number");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || alpha == 1.0) {
    throw InvalidArgument("order alpha must be positive and different from 1");
  }
}

void check_same_alphabet(const Pmf& p, const Pmf& q) {
  if (!(p.alphabet() == q.alphabet())) throw InvalidArgument("distributions live on different alphabets");
}

// log2 sum_x P(x)^alpha over the support, accurate when the sum is close to 1.
double log2_power_sum(std::span<const double> probs, double alpha) {
  // sum P^alpha - 1 = sum P (P^{alpha-1} - 1)
  double excess = 0.0;
  for (double v : probs) {
    if (v > 0.0) excess += v * std::expm1((alpha - 1.0) * std::log(v));
  }
  return std::log1p(excess) / kLn2;
}

double xlog2x(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

}  // namespace

OrderParam OrderParam::from_rho(double rho) {
  check_rho(rho);
  return OrderParam(rho, 1.0 / (1.0 + rho));
}

OrderParam OrderParam::from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1) to define a moment order");
  return OrderParam((1.0 - alpha) / alpha, alpha);
}

double shannon_entropy(const Pmf& p) {
  double h = 0.0;
  for (double v : p.probs()) h -= xlog2x(v);
  return h;
}

double kl_divergence(const Pmf& p, const Pmf& q) {
  check_same_alphabet(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInfinity;
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

double renyi_entropy(const Pmf& p, double rho) {
  check_rho(rho);
  const double alpha = 1.0 / (1.0 + rho);
  return (1.0 + rho) / rho * log2_power_sum(p.probs(), alpha);
}

double conditional_renyi(const JointPmf& joint, double rho) {
  check_rho(rho);
  const double alpha = 1.0 / (1.0 + rho);
  std::vector<double> log_terms;
  for (std::size_t y = 0; y < joint.y_size(); ++y) {
    double inner = 0.0;
    for (std::size_t x = 0; x < joint.x_size(); ++x) {
      if (joint(x, y) > 0.0) inner += std::pow(joint(x, y), alpha);
    }
    if (inner > 0.0) log_terms.push_back((1.0 + rho) * std::log(inner));
  }
  return detail::log_sum_exp(log_terms) / (rho * kLn2);
}

double sundaresan_divergence(const Pmf& p, const Pmf& q, double alpha) {
  check_same_alphabet(p, q);
  check_alpha(alpha);
  std::vector<double> lq, lp, lpq;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) lq.push_back(alpha * std::log(q[i]));
    if (p[i] > 0.0) lp.push_back(alpha * std::log(p[i]));
    if (p[i] > 0.0) {
      if (q[i] > 0.0) {
        lpq.push_back(std::log(p[i]) + (alpha - 1.0) * std::log(q[i]));
      } else if (alpha < 1.0) {
        return kInfinity;  // P(x) / 0
      }
      // alpha > 1: P(x) Q(x)^{alpha-1} = 0
    }
  }
  if (lpq.empty()) return kInfinity;  // alpha > 1 with disjoint supports
  const double sum_q = detail::log_sum_exp(lq);
  const double sum_p = detail::log_sum_exp(lp);
  const double sum_pq = detail::log_sum_exp(lpq);
  const double value = sum_q - sum_p / (1.0 - alpha) + alpha / (1.0 - alpha) * sum_pq;
  return value / kLn2;
}

double renyi_divergence(const Pmf& p, const Pmf& q, double alpha) {
  check_same_alphabet(p, q);
  check_alpha(alpha);
  std::vector<double> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      if (alpha > 1.0) return kInfinity;
      continue;
    }
    terms.push_back(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
  }
  if (terms.empty()) return kInfinity;
  return detail::log_sum_exp(terms) / ((alpha - 1.0) * kLn2);
}

double sundaresan_limit_zero(const Pmf& p, const Pmf& q) {
  check_same_alphabet(p, q);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] == 0.0) throw InvalidArgument("alpha -> 0 limit needs supp(P) inside supp(Q)");
  }
  return std::log2(static_cast<double>(q.support_size()) / static_cast<double>(p.support_size()));
}

double sundaresan_limit_infinity(const Pmf& p, const Pmf& q) {
  check_same_alphabet(p, q);
  const double qmax = *std::max_element(q.probs().begin(), q.probs().end());
  const double pmax = *std::max_element(p.probs().begin(), p.probs().end());
  double mass = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == qmax) {
      mass += p[i];
      ++count;
    }
  }
  if (mass == 0.0) return kInfinity;
  return std::log2(pmax / (mass / static_cast<double>(count)));
}

double tilted_objective(const Pmf& q, const Pmf& p, double rho) {
  check_rho(rho);
  const double d = kl_divergence(q, p);
  if (!std::isfinite(d)) return -kInfinity;
  return shannon_entropy(q) - d / rho;
}

double conditional_tilted_objective(const JointPmf& q_v, const JointPmf& p, double rho) {
  check_rho(rho);
  if (!(q_v.x_alphabet() == p.x_alphabet()) || !(q_v.y_alphabet() == p.y_alphabet())) {
    throw InvalidArgument("joint distributions live on different alphabets");
  }
  double h_joint = 0.0;
  double div = 0.0;
  std::vector<double> qy(q_v.y_size(), 0.0);
  for (std::size_t x = 0; x < q_v.x_size(); ++x) {
    for (std::size_t y = 0; y < q_v.y_size(); ++y) {
      const double j = q_v(x, y);
      if (j == 0.0) continue;
      if (p(x, y) == 0.0) return -kInfinity;
      h_joint -= xlog2x(j);
      div += j * std::log2(j / p(x, y));
      qy[y] += j;
    }
  }
  double h_y = 0.0;
  for (double v : qy) h_y -= xlog2x(v);
  return (h_joint - h_y) - div / rho;
}

Pmf tilted_pmf(const Pmf& p, double rho) {
  check_rho(rho);
  const double alpha = 1.0 / (1.0 + rho);
  std::vector<double> w(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) w[i] = std::pow(p[i], alpha);
  }
  return make_pmf(p.alphabet(), w);
}

VariationalResult variational_entropy(const Pmf& p, double rho) {
  check_rho(rho);
  const auto probs = p.probs();
  const double inv_rho = 1.0 / rho;
  auto objective = [&](std::span<const double> q, std::vector<double>& grad) {
    double h = 0.0, d = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] > 0.0) {
        const double lq = std::log2(q[i]);
        const double lp = std::log2(probs[i]);
        h -= q[i] * lq;
        d += q[i] * (lq - lp);
        grad[i] = -(1.0 + inv_rho) * lq + inv_rho * lp;
      } else {
        grad[i] = 0.0;
      }
    }
    return h - inv_rho * d;
  };
  // Start from the uniform law on the support.
  std::vector<double> start(p.size(), 0.0);
  const auto supp = p.support();
  for (auto i : supp) start[i] = 1.0 / static_cast<double>(supp.size());

  detail::AscentOptions opts;
  opts.initial_step = 0.5 * rho / (1.0 + rho);
  const auto res = detail::exponentiated_gradient_ascent(objective, std::move(start), opts);
  if (!res.converged) throw ConvergenceError("variational_entropy did not converge", res.value, 0.0);
  return VariationalResult{res.value, Pmf(p.alphabet(), res.point, 1e-9), res.iterations};
}

ConditionalMaximizers conditional_maximizers(const JointPmf& joint, double rho) {
  check_rho(rho);
  const double alpha = 1.0 / (1.0 + rho);
  const std::size_t nx = joint.x_size(), ny = joint.y_size();
  std::vector<double> qw(ny, 0.0);
  std::vector<std::optional<std::vector<double>>> rows(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    double inner = 0.0;
    std::vector<double> row(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      if (joint(x, y) > 0.0) {
        row[x] = std::pow(joint(x, y), alpha);
        inner += row[x];
      }
    }
    if (inner == 0.0) continue;
    qw[y] = std::pow(inner, 1.0 + rho);
    for (double& v : row) v /= inner;
    rows[y] = std::move(row);
  }
  Pmf q = make_pmf(joint.y_alphabet(), qw);
  Channel v(joint.y_alphabet(), joint.x_alphabet(), std::move(rows), 1e-9);
  return ConditionalMaximizers{std::move(q), std::move(v)};
}

ConditionalVariationalResult variational_conditional(const JointPmf& joint, double rho) {
  check_rho(rho);
  const std::size_t nx = joint.x_size(), ny = joint.y_size();
  const double inv_rho = 1.0 / rho;
  // Flattened joint J(x, y) at index x * ny + y.
  auto objective = [&](std::span<const double> j, std::vector<double>& grad) {
    std::vector<double> jy(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) jy[y] += j[x * ny + y];
    }
    double h = 0.0, d = 0.0, hy = 0.0;
    for (double v : jy) hy -= xlog2x(v);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        const std::size_t i = x * ny + y;
        if (j[i] > 0.0) {
          const double lj = std::log2(j[i]);
          const double lp = std::log2(joint(x, y));
          h -= j[i] * lj;
          d += j[i] * (lj - lp);
          grad[i] = -(1.0 + inv_rho) * lj + std::log2(jy[y]) + inv_rho * lp;
        } else {
          grad[i] = 0.0;
        }
      }
    }
    return (h - hy) - inv_rho * d;
  };
  std::vector<double> start(nx * ny, 0.0);
  std::size_t count = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) count += joint(x, y) > 0.0;
  }
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (joint(x, y) > 0.0) start[x * ny + y] = 1.0 / static_cast<double>(count);
    }
  }
  detail::AscentOptions opts;
  opts.initial_step = 0.5 * rho / (1.0 + rho);
  const auto res = detail::exponentiated_gradient_ascent(objective, std::move(start), opts);
  if (!res.converged) throw ConvergenceError("variational_conditional did not converge", res.value, 0.0);

  auto maximizers = conditional_maximizers(joint, rho);
  return ConditionalVariationalResult{res.value, std::move(maximizers.q_star),
                                      std::move(maximizers.v_star), res.iterations};
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("binary_entropy: argument outside [0, 1]");
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double inverse_binary_entropy(double h) {
  if (!(h >= 0.0)) throw InvalidArgument("inverse_binary_entropy: negative argument");
  if (h >= 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) < h ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace taskcode

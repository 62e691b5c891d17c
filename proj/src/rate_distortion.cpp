#include "taskcode/rate_distortion.hpp"

#include "simplex_ascent.hpp"
#include "taskcode/renyi.hpp"
#include "taskcode/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace taskcode {

Distortion::Distortion(Alphabet x_alphabet, Alphabet xhat_alphabet, std::vector<std::vector<double>> d)
    : x_(std::move(x_alphabet)), xhat_(std::move(xhat_alphabet)), d_(std::move(d)) {
  if (d_.size() != x_.size()) throw InvalidArgument("distortion: row count does not match X");
  for (const auto& row : d_) {
    if (row.size() != xhat_.size()) throw InvalidArgument("distortion: column count does not match Xhat");
    bool has_zero = false;
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("distortion values must be finite and nonnegative");
      has_zero |= v == 0.0;
    }
    if (!has_zero) throw InvalidArgument("distortion: every source symbol needs a zero-distortion reproduction");
  }
}

Distortion Distortion::hamming(const Alphabet& alphabet) {
  const std::size_t k = alphabet.size();
  std::vector<std::vector<double>> d(k, std::vector<double>(k, 1.0));
  for (std::size_t i = 0; i < k; ++i) d[i][i] = 0.0;
  return Distortion(alphabet, alphabet, std::move(d));
}

double Distortion::max_useful_level(const Pmf& q) const {
  double best = kInfinity;
  for (std::size_t xh = 0; xh < xhat_size(); ++xh) {
    double e = 0.0;
    for (std::size_t x = 0; x < x_size(); ++x) e += q[x] * d_[x][xh];
    best = std::min(best, e);
  }
  return best;
}

namespace {

struct Warm {
  std::vector<double> r;
  double s = 0.0;
};

struct FixedSlope {
  double rate = 0.0;
  double level = 0.0;
  double gap = 0.0;  // certified bound on the fixed-slope objective error
  std::vector<double> log_z;  // log2 Z_x
};

// Blahut-Arimoto at fixed slope s (s = +inf restricts to zero-distortion pairs).
FixedSlope blahut_arimoto(const Pmf& q, const Distortion& dist, double s, std::vector<double>& r,
                          double gap_tol, int max_iter, bool strict) {
  const std::size_t nx = dist.x_size(), nh = dist.xhat_size();
  const bool hard = std::isinf(s);
  std::vector<std::vector<double>> kernel(nx, std::vector<double>(nh));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t h = 0; h < nh; ++h) {
      kernel[x][h] = hard ? (dist(x, h) == 0.0 ? 1.0 : 0.0) : std::exp2(-s * dist(x, h));
    }
  }
  std::vector<double> z(nx), c(nh);
  double gap = kInfinity;
  int it = 0;
  for (; it < max_iter; ++it) {
    for (std::size_t x = 0; x < nx; ++x) {
      double acc = 0.0;
      for (std::size_t h = 0; h < nh; ++h) acc += r[h] * kernel[x][h];
      z[x] = acc;
    }
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      if (q[x] == 0.0) continue;
      for (std::size_t h = 0; h < nh; ++h) c[h] += q[x] * kernel[x][h] / z[x];
    }
    gap = std::log2(*std::max_element(c.begin(), c.end()));
    if (gap < gap_tol) break;
    double total = 0.0;
    for (std::size_t h = 0; h < nh; ++h) {
      r[h] *= c[h];
      total += r[h];
    }
    for (double& v : r) v /= total;
  }
  if (it == max_iter && strict) {
    throw ConvergenceError("rate-distortion: Blahut-Arimoto did not converge", kInfinity, gap);
  }
  FixedSlope out;
  out.gap = gap;
  out.log_z.resize(nx);
  std::vector<double> out_marginal(nh, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    out.log_z[x] = std::log2(z[x]);
    if (q[x] == 0.0) continue;
    for (std::size_t h = 0; h < nh; ++h) out_marginal[h] += q[x] * r[h] * kernel[x][h] / z[x];
  }
  for (std::size_t x = 0; x < nx; ++x) {
    if (q[x] == 0.0) continue;
    for (std::size_t h = 0; h < nh; ++h) {
      const double w = r[h] * kernel[x][h] / z[x];
      if (w <= 0.0) continue;
      out.rate += q[x] * w * std::log2(w / out_marginal[h]);
      out.level += q[x] * w * dist(x, h);
    }
  }
  out.rate = std::max(out.rate, 0.0);
  return out;
}

RdPoint rd_solve_impl(const Pmf& q, const Distortion& dist, double level, const RdOptions& opts, Warm* warm) {
  if (!(q.alphabet() == dist.x_alphabet())) throw InvalidArgument("rate-distortion: source and distortion alphabets differ");
  if (!(level >= 0.0)) throw InvalidArgument("distortion level must be nonnegative");
  const std::size_t nh = dist.xhat_size();
  RdPoint pt;
  pt.gradient.assign(dist.x_size(), 0.0);
  if (level >= dist.max_useful_level(q)) {
    pt.rate = 0.0;
    pt.slope = 0.0;
    pt.output.assign(nh, 0.0);
    return pt;
  }
  std::vector<double> r = warm && warm->r.size() == nh ? warm->r : std::vector<double>(nh, 1.0 / nh);
  // Keep every reproduction letter alive so warm starts can move anywhere.
  for (double& v : r) v = std::max(v, 1e-300);
  const double gap_tol = opts.tolerance * 1e-2;

  auto finish = [&](const FixedSlope& fs, double s) {
    // Intermediate slopes near a critical point converge sublinearly; only the final one must.
    if (opts.strict && !(fs.gap < gap_tol)) {
      throw ConvergenceError("rate-distortion: Blahut-Arimoto did not converge", kInfinity, fs.gap);
    }
    pt.rate = fs.rate;
    pt.slope = s;
    pt.residual = fs.gap;
    pt.output = r;
    for (std::size_t x = 0; x < dist.x_size(); ++x) pt.gradient[x] = -fs.log_z[x];
    if (warm) {
      warm->r = r;
      warm->s = s;
    }
    return pt;
  };

  if (level == 0.0) {
    const auto fs = blahut_arimoto(q, dist, kInfinity, r, gap_tol, opts.max_iterations, opts.strict);
    return finish(fs, kInfinity);
  }

  // D(s) decreases in s; bracket [lo, hi] with D(lo) > level >= D(hi), then bisect.
  double lo = 0.0;
  double hi = warm && warm->s > 0.0 && std::isfinite(warm->s) ? warm->s : 1.0;
  FixedSlope fs = blahut_arimoto(q, dist, hi, r, gap_tol, opts.max_iterations, false);
  if (fs.level > level) {
    while (fs.level > level) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e6) throw ConvergenceError("rate-distortion: slope bracket diverged", kInfinity, fs.level - level);
      fs = blahut_arimoto(q, dist, hi, r, gap_tol, opts.max_iterations, false);
    }
  } else {
    while (hi > 1e-12) {
      const double cand = 0.5 * hi;
      const auto f2 = blahut_arimoto(q, dist, cand, r, gap_tol, opts.max_iterations, false);
      if (f2.level > level) {
        lo = cand;
        break;
      }
      hi = cand;
      fs = f2;
    }
  }
  double s = hi;
  for (int k = 0; k < 200 && std::abs(fs.level - level) > 1e-14 && hi - lo > 1e-15 * hi; ++k) {
    s = hi / lo < 2.0 || lo == 0.0 ? 0.5 * (lo + hi) : std::sqrt(lo * hi);
    fs = blahut_arimoto(q, dist, s, r, gap_tol, opts.max_iterations, false);
    (fs.level > level ? lo : hi) = s;
  }
  // Correct for the residual level mismatch along the supporting line of slope -s.
  fs.rate = std::max(0.0, fs.rate + s * (fs.level - level));
  return finish(fs, s);
}

}  // namespace

RdPoint rd_solve(const Pmf& q, const Distortion& dist, double level, const RdOptions& opts) {
  return rd_solve_impl(q, dist, level, opts, nullptr);
}

double rd_function(const Pmf& q, const Distortion& dist, double level, const RdOptions& opts) {
  return rd_solve(q, dist, level, opts).rate;
}

RenyiRdResult renyi_rd_solve(const Pmf& p, const Distortion& dist, double level, double rho,
                             const RenyiRdOptions& opts) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!(level >= 0.0)) throw InvalidArgument("distortion level must be nonnegative");
  if (!(p.alphabet() == dist.x_alphabet())) throw InvalidArgument("source and distortion alphabets differ");
  const std::size_t n = p.size();
  const auto supp = p.support();
  const double inv_rho = 1.0 / rho;

  Warm warm;
  auto objective = [&](std::span<const double> q, std::vector<double>& grad) {
    Pmf qp(p.alphabet(), std::vector<double>(q.begin(), q.end()), 1e-9);
    const auto pt = rd_solve_impl(qp, dist, level, opts.inner, &warm);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (q[i] > 0.0) {
        const double l = std::log2(q[i] / p[i]);
        d += q[i] * l;
        grad[i] = pt.gradient[i] - inv_rho * l;
      } else {
        grad[i] = 0.0;
      }
    }
    return pt.rate - inv_rho * d;
  };

  Rng rng(opts.seed);
  detail::AscentOptions aopts;
  aopts.max_iterations = opts.max_iterations;
  aopts.tolerance = opts.tolerance;
  aopts.initial_step = 0.5 * rho / (1.0 + rho);

  double best = -kInfinity;
  std::vector<double> best_point(p.probs().begin(), p.probs().end());
  bool any_converged = false;
  // Q = P is always feasible and gives R(P, D) >= 0.
  {
    std::vector<double> g(n);
    warm = Warm{};
    best = objective(best_point, g);
  }
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::vector<double> start(n, 0.0);
    double total = 0.0;
    for (auto i : supp) {
      start[i] = std::max(-std::log1p(-uniform01(rng)), 1e-6);
      total += start[i];
    }
    for (double& v : start) v /= total;
    warm = Warm{};
    const auto res = detail::exponentiated_gradient_ascent(objective, std::move(start), aopts);
    any_converged |= res.converged;
    if (res.value > best) {
      best = res.value;
      best_point = res.point;
    }
  }
  if (!any_converged && opts.restarts > 0) {
    throw ConvergenceError("renyi_rd: ascent stagnated in every restart", best, 0.0);
  }
  return RenyiRdResult{std::max(best, 0.0), Pmf(p.alphabet(), best_point, 1e-9), true};
}

double renyi_rd(const Pmf& p, const Distortion& dist, double level, double rho, const RenyiRdOptions& opts) {
  return renyi_rd_solve(p, dist, level, rho, opts).value;
}

double binary_hamming_renyi_rd(double p, double level, double rho) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("binary_hamming_renyi_rd: p must lie in (0, 1)");
  if (!(level >= 0.0)) throw InvalidArgument("distortion level must be nonnegative");
  const auto src = make_pmf(Alphabet::range(2), std::vector<double>{p, 1.0 - p});
  const double h = renyi_entropy(src, rho);
  if (level < inverse_binary_entropy(h)) return h - binary_entropy(std::min(level, 0.5));
  return 0.0;
}

}  // namespace taskcode

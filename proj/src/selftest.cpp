#include "taskcode/selftest.hpp"

#include "taskcode/cost.hpp"
#include "taskcode/lossy.hpp"
#include "taskcode/oracle.hpp"
#include "taskcode/partition.hpp"
#include "taskcode/rate_distortion.hpp"
#include "taskcode/renyi.hpp"
#include "taskcode/sampling.hpp"
#include "taskcode/task_encoder.hpp"
#include "taskcode/universal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

namespace taskcode {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  // `body` returns the worst slack observed (>= 0 means every trial passed).
  void check(const std::string& name, int trials, const std::function<double()>& body) {
    bool ok = false;
    std::string detail;
    try {
      const double worst = body();
      ok = worst >= 0.0;
      detail = "worst margin " + fmt(worst);
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    out_ << (ok ? "PASS " : "FAIL ") << name << " [" << trials << " trials] " << detail << '\n';
    ++total_;
    if (!ok) ++failed_;
  }

  bool summary() {
    out_ << (failed_ == 0 ? "selftest passed: " : "selftest FAILED: ") << (total_ - failed_) << '/' << total_
         << " checks\n";
    return failed_ == 0;
  }

 private:
  std::ostream& out_;
  int total_ = 0;
  int failed_ = 0;
};

// margin of a <= b with relative tolerance
double leq(double a, double b, double tol = 1e-9) { return b - a + tol * std::max(1.0, std::abs(b)); }
double close(double a, double b, double tol) { return tol - std::abs(a - b); }

}  // namespace

bool run_selftest(std::uint64_t seed, std::ostream& out) {
  Report r(out);
  const double rhos[] = {0.5, 1.0, 2.0};

  r.check("prob: product mass and marginals", 50, [&] {
    Rng rng(seed + 1);
    double worst = kInfinity;
    for (int t = 0; t < 50; ++t) {
      const auto p = random_pmf(rng, Alphabet::range(2 + uniform_index(rng, 3)), 0.2);
      const int n = 1 + static_cast<int>(uniform_index(rng, 4));
      const auto pn = product_pmf(p, n);
      double total = 0.0;
      std::vector<double> first(p.size(), 0.0);
      for (std::size_t i = 0; i < pn.size(); ++i) {
        total += pn[i];
        first[pn.alphabet().digits(i)[0]] += pn[i];
      }
      worst = std::min(worst, close(total, 1.0, 1e-9));
      for (std::size_t a = 0; a < p.size(); ++a) worst = std::min(worst, close(first[a], p[a], 1e-9));
    }
    return worst;
  });

  r.check("prob: condition then combine", 50, [&] {
    Rng rng(seed + 2);
    double worst = kInfinity;
    for (int t = 0; t < 50; ++t) {
      const auto j = random_joint(rng, Alphabet::range(3), Alphabet::range(3), 0.3);
      const auto c = condition_joint(j);
      const auto back = combine(c.y_marginal, c.x_given_y);
      for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 3; ++y) worst = std::min(worst, close(back(x, y), j(x, y), 1e-12));
      }
    }
    return worst;
  });

  r.check("prob: ceiling power inequality", 1000, [&] {
    Rng rng(seed + 3);
    double worst = kInfinity;
    for (int t = 0; t < 1000; ++t) {
      const double xi = 20.0 * uniform01(rng), rho = 0.05 + 5.0 * uniform01(rng);
      worst = std::min(worst, ceiling_power_bound(xi, rho) - std::pow(std::ceil(xi), rho));
    }
    return worst > 0.0 ? worst : -1.0;
  });

  r.check("renyi: entropy sandwich and monotone in rho", 200, [&] {
    Rng rng(seed + 4);
    double worst = kInfinity;
    for (int t = 0; t < 200; ++t) {
      const auto p = random_pmf(rng, Alphabet::range(2 + uniform_index(rng, 6)), 0.2);
      double prev = shannon_entropy(p);
      for (double rho : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        const double h = renyi_entropy(p, rho);
        worst = std::min(worst, leq(prev, h));
        prev = h;
      }
      worst = std::min(worst, leq(prev, std::log2(static_cast<double>(p.support_size()))));
    }
    return worst;
  });

  r.check("renyi: variational identity", 100, [&] {
    Rng rng(seed + 5);
    double worst = kInfinity;
    for (int t = 0; t < 100; ++t) {
      const auto p = random_pmf(rng, Alphabet::range(2 + uniform_index(rng, 5)), 0.2);
      const double rho = rhos[uniform_index(rng, 3)];
      const double h = renyi_entropy(p, rho);
      worst = std::min(worst, close(variational_entropy(p, rho).value, h, 1e-9));
      worst = std::min(worst, close(tilted_objective(tilted_pmf(p, rho), p, rho), h, 1e-12));
    }
    return worst;
  });

  r.check("renyi: conditional identity and maximizers", 50, [&] {
    Rng rng(seed + 6);
    double worst = kInfinity;
    for (int t = 0; t < 50; ++t) {
      const auto j = random_joint(rng, Alphabet::range(2 + uniform_index(rng, 2)), Alphabet::range(2), 0.2);
      const double rho = rhos[uniform_index(rng, 3)];
      const double h = conditional_renyi(j, rho);
      const auto v = variational_conditional(j, rho);
      worst = std::min(worst, close(v.value, h, 1e-9));
      worst = std::min(worst, close(conditional_tilted_objective(combine(v.q_star, v.v_star), j, rho), h, 1e-12));
    }
    return worst;
  });

  r.check("renyi: sundaresan divergence properties", 200, [&] {
    Rng rng(seed + 7);
    double worst = kInfinity;
    for (int t = 0; t < 200; ++t) {
      const Alphabet a = Alphabet::range(2 + uniform_index(rng, 4));
      const auto p = random_pmf(rng, a), q = random_pmf(rng, a);
      const double alpha = uniform01(rng) < 0.5 ? 0.1 + 0.8 * uniform01(rng) : 1.1 + 3.0 * uniform01(rng);
      const double d = sundaresan_divergence(p, q, alpha);
      worst = std::min(worst, d + 1e-12);
      worst = std::min(worst, close(sundaresan_divergence(p, p, alpha), 0.0, 1e-12));
      worst = std::min(worst, close(sundaresan_divergence(product_pmf(p, 2), product_pmf(q, 2), alpha), 2.0 * d, 1e-9));
      worst = std::min(worst, close(sundaresan_divergence(p, q, 1.0 + 1e-4), kl_divergence(p, q), 1e-3));
    }
    return worst;
  });

  r.check("rate-distortion: numeric vs binary closed form", 6, [&] {
    const auto a = Alphabet::range(2);
    const auto p = make_pmf(a, std::vector<double>{0.25, 0.75});
    const auto d = Distortion::hamming(a);
    RenyiRdOptions opts;
    opts.seed = seed;
    double worst = kInfinity;
    for (double rho : {0.1, 1.0, 10.0}) {
      for (double level : {0.05, 0.2}) {
        worst = std::min(worst, close(renyi_rd(p, d, level, rho, opts), binary_hamming_renyi_rd(0.25, level, rho), 1e-4));
      }
    }
    return worst;
  });

  r.check("partition: counting identity", 1000, [&] {
    Rng rng(seed + 8);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t k = 1 + uniform_index(rng, 16);
      std::vector<std::size_t> labels(k);
      std::size_t used = 0;
      for (auto& l : labels) {
        l = uniform_index(rng, used + 1);
        used = std::max(used, l + 1);
      }
      const auto part = Partition::from_labels(Alphabet::range(k), labels);
      if (partition_identity(part) != Rational(part.num_blocks())) return -1.0;
    }
    return 0.0;
  });

  r.check("partition: budgeted construction", 1000, [&] {
    Rng rng(seed + 9);
    double worst = kInfinity;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t k = 1 + uniform_index(rng, 32);
      std::vector<std::uint64_t> lambda(k);
      for (auto& l : lambda) l = uniform01(rng) < 0.15 ? kUnbounded : 1 + uniform_index(rng, k);
      const Budget b(Alphabet::range(k), lambda);
      const auto part = build_budget_partition(b);
      for (std::size_t x = 0; x < k; ++x) {
        worst = std::min(worst, static_cast<double>(std::min<std::uint64_t>(lambda[x], k)) -
                                    static_cast<double>(part.block_size(x)));
      }
      worst = std::min(worst, static_cast<double>(subset_count_bound(b.mu(), k)) - static_cast<double>(part.num_blocks()));
    }
    const Budget ex(Alphabet({"a", "b", "c", "d"}), {1, 2, 4, 4});
    if (build_budget_partition(ex).num_blocks() != 3) return -1.0;
    return worst;
  });

  r.check("task-encoder: one-shot sandwich", 200, [&] {
    Rng rng(seed + 10);
    double worst = kInfinity;
    for (int t = 0; t < 200; ++t) {
      const std::size_t k = 2 + uniform_index(rng, 6);
      const auto p = random_pmf(rng, Alphabet::range(k), 0.15);
      const double rho = rhos[uniform_index(rng, 3)];
      const std::size_t m = 1 + uniform_index(rng, 12);
      const auto b = moment_bounds(p, rho, m);
      const double opt = exact_min_moment(p, rho, m).min_moment;
      worst = std::min(worst, leq(b.lower, opt));
      if (b.upper) {
        const double built = moment(build_encoder(p, rho, m), p, rho);
        worst = std::min(worst, leq(opt, built));
        worst = std::min(worst, *b.upper - built > 0.0 ? *b.upper - built : -1.0);
      }
    }
    return worst;
  });

  r.check("task-encoder: mismatched bound", 200, [&] {
    Rng rng(seed + 11);
    double worst = kInfinity;
    for (int t = 0; t < 200; ++t) {
      const Alphabet a = Alphabet::range(2 + uniform_index(rng, 5));
      const auto p = random_pmf(rng, a), q = random_pmf(rng, a);
      const double rho = rhos[uniform_index(rng, 3)];
      const std::size_t m = 6 + uniform_index(rng, 8);
      const auto me = build_mismatched_encoder(p, q, rho, m);
      const double v = moment(me.encoder, p, rho);
      worst = std::min(worst, me.bound - v > 0.0 ? me.bound - v : -1.0);
    }
    return worst;
  });

  r.check("task-encoder: side-information bounds", 100, [&] {
    Rng rng(seed + 12);
    double worst = kInfinity;
    for (int t = 0; t < 100; ++t) {
      const auto j = random_joint(rng, Alphabet::range(2 + uniform_index(rng, 4)), Alphabet::range(2 + uniform_index(rng, 2)), 0.2);
      const double rho = rhos[uniform_index(rng, 3)];
      const std::size_t m = 5 + uniform_index(rng, 6);
      const auto b = side_info_bounds(j, rho, m);
      const double v = moment_si(build_si_encoder(j, rho, m), j, rho);
      const double opt = exact_min_moment_si(j, rho, m).min_moment;
      worst = std::min({worst, leq(b.lower, opt), leq(opt, v)});
      worst = std::min(worst, *b.upper - v > 0.0 ? *b.upper - v : -1.0);
    }
    return worst;
  });

  r.check("oracle: nonincreasing in M", 100, [&] {
    Rng rng(seed + 13);
    double worst = kInfinity;
    for (int t = 0; t < 100; ++t) {
      const auto p = random_pmf(rng, Alphabet::range(2 + uniform_index(rng, 5)), 0.2);
      double prev = kInfinity;
      for (std::size_t m = 1; m <= p.size(); ++m) {
        const double v = exact_min_moment(p, 1.0, m).min_moment;
        worst = std::min(worst, leq(v, prev));
        prev = v;
      }
      worst = std::min(worst, close(prev, 1.0, 1e-12));
    }
    return worst;
  });

  r.check("universal: bound under random sources", 5 * 20, [&] {
    Rng rng(seed + 14);
    double worst = kInfinity;
    for (int n = 2; n <= 6; ++n) {
      const UniversalCode code({n, 1.0}, Alphabet::range(2));
      for (int t = 0; t < 20; ++t) {
        const auto p = random_pmf(rng, Alphabet::range(2));
        const double v = code.moment(p, 1.0);
        worst = std::min(worst, universal_moment_bound(n, 1.0, 1.0, p) - v);
      }
    }
    return worst;
  });

  r.check("universal: type class sizes sum to |X|^n", 3, [&] {
    for (int n : {3, 5, 8}) {
      BigInt total = 0;
      for (const auto& t : enumerate_types(n, 3)) total += t.class_size();
      if (total != boost::multiprecision::pow(BigInt(3), n)) return -1.0;
    }
    return 0.0;
  });

  r.check("lossy: fidelity and zero-distortion equivalence", 4, [&] {
    const auto a = Alphabet::range(2);
    const auto d = Distortion::hamming(a);
    const auto p = make_pmf(a, std::vector<double>{0.25, 0.75});
    double worst = kInfinity;
    for (int n : {4, 6}) {
      const auto codec = build_lossy_codec(n, 0.8, d, 0.25);
      worst = std::min(worst, leq(codec_worst_distortion(codec, d), 0.25));
      const auto exact = build_lossy_codec(n, 0.8, d, 0.0);
      worst = std::min(worst, close(lossy_moment(exact, p, 1.0), UniversalCode({n, 0.8}, a).moment(p, 1.0), 1e-12));
    }
    return worst;
  });

  r.check("cost: converse bound on all small encoders", 1, [&] {
    const auto a = Alphabet::range(2);
    const auto p = make_pmf(a, std::vector<double>{0.3, 0.7});
    const CostFn c(a, {0.0, 1.0});
    double worst = kInfinity;
    // every map of the 4 pairs into 4 descriptions
    for (std::size_t code = 0; code < 256; ++code) {
      std::vector<std::size_t> assign(4);
      for (std::size_t i = 0; i < 4; ++i) assign[i] = (code >> (2 * i)) & 3;
      const TaskEncoder enc(Alphabet::power(a, 2), 4, assign);
      const double rate = std::log2(4.0) / 2.0;
      worst = std::min(worst, leq(cost_converse_bound(p, c, rate, 2), cost_moment(enc, p, c, 2)));
    }
    return worst;
  });

  return r.summary();
}

}  // namespace taskcode

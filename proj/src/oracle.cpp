#include "taskcode/oracle.hpp"

#include <cmath>
#include <limits>

namespace taskcode {
namespace {

struct Search {
  std::span<const double> p;
  double rho;
  std::size_t max_blocks;
  std::vector<double> pow_table;  // pow_table[s] = s^rho
  std::vector<double> suffix;     // mass of symbols i..k-1

  std::vector<std::size_t> rgs, best_rgs;
  std::vector<double> mass;
  std::vector<std::size_t> size;
  double best = std::numeric_limits<double>::infinity();

  double partial() const {
    double total = 0.0;
    for (std::size_t b = 0; b < mass.size(); ++b) total += mass[b] * pow_table[size[b]];
    return total;
  }

  void run(std::size_t i, std::size_t used) {
    const std::size_t k = p.size();
    if (i == k) {
      const double v = partial();
      if (std::isinf(best) || v < best - 1e-12 * std::max(1.0, best)) {
        best = v;
        best_rgs = rgs;
      }
      return;
    }
    // Block contributions only grow; each remaining symbol adds at least its mass.
    if (!std::isinf(best) && partial() + suffix[i] > best + 1e-12 * std::max(1.0, best)) return;
    const std::size_t limit = std::min(used + 1, max_blocks);
    for (std::size_t b = 0; b < limit; ++b) {
      if (b == used) {
        mass.push_back(0.0);
        size.push_back(0);
      }
      rgs[i] = b;
      mass[b] += p[i];
      ++size[b];
      run(i + 1, std::max(used, b + 1));
      mass[b] -= p[i];
      --size[b];
      if (b == used) {
        mass.pop_back();
        size.pop_back();
      }
    }
  }
};

}  // namespace

OracleResult exact_min_moment(const Pmf& p, double rho, std::size_t descriptions) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (descriptions == 0) throw InvalidArgument("M must be positive");
  const std::size_t k = p.size();
  if (k > 12) throw CapExceeded("exact_min_moment: alphabet larger than 12 symbols");
  Search s;
  s.p = p.probs();
  s.rho = rho;
  s.max_blocks = std::min(descriptions, k);
  s.pow_table.resize(k + 1);
  for (std::size_t i = 0; i <= k; ++i) s.pow_table[i] = std::pow(static_cast<double>(i), rho);
  s.suffix.assign(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) s.suffix[i] = s.suffix[i + 1] + p[i];
  s.rgs.assign(k, 0);
  s.run(0, 0);
  auto part = Partition::from_labels(p.alphabet(), s.best_rgs);
  const std::size_t used = part.num_blocks();
  return OracleResult{s.best, std::move(part), used};
}

OracleSiResult exact_min_moment_si(const JointPmf& joint, double rho, std::size_t descriptions) {
  if (joint.x_size() > 10 || joint.y_size() > 6) {
    throw CapExceeded("exact_min_moment_si: needs |X| <= 10 and |Y| <= 6");
  }
  const auto cond = condition_joint(joint);
  OracleSiResult out{0.0, {}};
  out.per_y.resize(joint.y_size());
  for (std::size_t y = 0; y < joint.y_size(); ++y) {
    if (!cond.x_given_y.defined(y)) continue;
    auto r = exact_min_moment(cond.x_given_y.row_pmf(y), rho, descriptions);
    out.min_moment += cond.y_marginal[y] * r.min_moment;
    out.per_y[y] = std::move(r);
  }
  return out;
}

}  // namespace taskcode

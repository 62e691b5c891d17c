#include "taskcode/task_encoder.hpp"

#include "taskcode/renyi.hpp"

#include <algorithm>
#include <cmath>

namespace taskcode {

TaskEncoder::TaskEncoder(Alphabet alphabet, std::size_t descriptions, std::vector<std::size_t> assign)
    : alphabet_(std::move(alphabet)), m_(descriptions), assign_(std::move(assign)) {
  if (m_ == 0) throw InvalidArgument("encoder: need at least one description");
  if (assign_.size() != alphabet_.size()) throw InvalidArgument("encoder: one description per symbol required");
  for (auto m : assign_) {
    if (m >= m_) throw InvalidArgument("encoder: description index out of range");
  }
}

TaskEncoder TaskEncoder::from_partition(const Partition& part, std::size_t descriptions) {
  if (part.num_blocks() > descriptions) {
    throw InvalidArgument("encoder: partition has more blocks than descriptions");
  }
  std::vector<std::size_t> assign(part.alphabet().size());
  for (std::size_t x = 0; x < assign.size(); ++x) assign[x] = part.block_of(x);
  return TaskEncoder(part.alphabet(), descriptions, std::move(assign));
}

std::vector<std::size_t> TaskEncoder::fiber_sizes() const {
  std::vector<std::size_t> count(m_, 0);
  for (auto m : assign_) ++count[m];
  std::vector<std::size_t> out(assign_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = count[assign_[x]];
  return out;
}

std::vector<std::vector<std::size_t>> TaskEncoder::fibers() const {
  std::vector<std::vector<std::size_t>> by_m(m_);
  for (std::size_t x = 0; x < assign_.size(); ++x) by_m[assign_[x]].push_back(x);
  std::vector<std::vector<std::size_t>> out;
  for (auto& f : by_m) {
    if (!f.empty()) out.push_back(std::move(f));
  }
  return out;
}

std::size_t TaskEncoder::used_descriptions() const {
  std::vector<char> used(m_, 0);
  for (auto m : assign_) used[m] = 1;
  return static_cast<std::size_t>(std::count(used.begin(), used.end(), 1));
}

Partition TaskEncoder::partition() const { return Partition(alphabet_, fibers()); }

SiTaskEncoder::SiTaskEncoder(Alphabet x_alphabet, Alphabet y_alphabet, std::size_t descriptions,
                             std::vector<std::vector<std::size_t>> assign_by_y)
    : x_(std::move(x_alphabet)), y_(std::move(y_alphabet)), m_(descriptions), assign_(std::move(assign_by_y)) {
  if (m_ == 0) throw InvalidArgument("encoder: need at least one description");
  if (assign_.size() != y_.size()) throw InvalidArgument("side-information encoder: one row per y required");
  for (const auto& row : assign_) {
    if (row.size() != x_.size()) throw InvalidArgument("side-information encoder: one description per x required");
    for (auto m : row) {
      if (m >= m_) throw InvalidArgument("encoder: description index out of range");
    }
  }
}

TaskEncoder SiTaskEncoder::slice(std::size_t y) const { return TaskEncoder(x_, m_, assign_.at(y)); }

namespace {

// sum_m P(f^{-1}(m)) |f^{-1}(m)|^rho for an assignment and symbol weights.
double fiber_moment(const std::vector<std::size_t>& assign, std::size_t m, std::span<const double> w, double rho) {
  std::vector<double> mass(m, 0.0);
  std::vector<std::size_t> size(m, 0);
  for (std::size_t x = 0; x < assign.size(); ++x) {
    mass[assign[x]] += w[x];
    ++size[assign[x]];
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (mass[i] > 0.0) total += mass[i] * std::pow(static_cast<double>(size[i]), rho);
  }
  return total;
}

}  // namespace

double moment(const TaskEncoder& enc, const Pmf& p, double rho) {
  if (!(enc.alphabet() == p.alphabet())) throw InvalidArgument("moment: encoder and pmf alphabets differ");
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  return fiber_moment(enc.assign(), enc.descriptions(), p.probs(), rho);
}

double moment_si(const SiTaskEncoder& enc, const JointPmf& joint, double rho) {
  if (!(enc.x_alphabet() == joint.x_alphabet()) || !(enc.y_alphabet() == joint.y_alphabet())) {
    throw InvalidArgument("moment_si: encoder and joint alphabets differ");
  }
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  double total = 0.0;
  std::vector<double> col(joint.x_size());
  for (std::size_t y = 0; y < joint.y_size(); ++y) {
    for (std::size_t x = 0; x < joint.x_size(); ++x) col[x] = joint(x, y);
    const auto s = enc.slice(y);
    total += fiber_moment(s.assign(), s.descriptions(), col, rho);
  }
  return total;
}

double m_tilde(std::size_t descriptions, std::size_t alphabet_size) {
  return (static_cast<double>(descriptions) - std::log2(static_cast<double>(alphabet_size)) - 2.0) / 4.0;
}

namespace {

MomentBounds bounds_from_entropy(double h, double rho, std::size_t descriptions, std::size_t alphabet_size) {
  MomentBounds b;
  b.lower = std::exp2(rho * (h - std::log2(static_cast<double>(descriptions))));
  const double mt = m_tilde(descriptions, alphabet_size);
  if (mt > 0.0) b.upper = 1.0 + std::exp2(rho * (h - std::log2(mt)));
  return b;
}

void require_descriptions(std::size_t descriptions, std::size_t alphabet_size) {
  if (!(m_tilde(descriptions, alphabet_size) > 0.0)) {
    throw InvalidArgument("encoder construction needs M > log2|X| + 2 (M = " + std::to_string(descriptions) +
                          ", |X| = " + std::to_string(alphabet_size) + ")");
  }
}

}  // namespace

MomentBounds moment_bounds(const Pmf& p, double rho, std::size_t descriptions) {
  if (descriptions == 0) throw InvalidArgument("M must be positive");
  return bounds_from_entropy(renyi_entropy(p, rho), rho, descriptions, p.size());
}

MomentBounds side_info_bounds(const JointPmf& joint, double rho, std::size_t descriptions) {
  if (descriptions == 0) throw InvalidArgument("M must be positive");
  return bounds_from_entropy(conditional_renyi(joint, rho), rho, descriptions, joint.x_size());
}

Budget encoder_budget(const Pmf& p, double rho, std::size_t descriptions) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  require_descriptions(descriptions, p.size());
  const double alpha = 1.0 / (1.0 + rho);
  double power_sum = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) power_sum += std::pow(v, alpha);
  }
  const double beta = 2.0 * power_sum /
                      (static_cast<double>(descriptions) - std::log2(static_cast<double>(p.size())) - 2.0);
  std::vector<std::uint64_t> lambda(p.size(), kUnbounded);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    const double v = std::ceil(beta * std::pow(p[x], -alpha));
    // Anything at least |X| behaves like +inf in the partition; clamp to stay finite.
    lambda[x] = v >= 9.0e18 ? static_cast<std::uint64_t>(9.0e18) : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v));
  }
  return Budget(p.alphabet(), std::move(lambda));
}

TaskEncoder build_budget_encoder(const Pmf& p, double rho, std::size_t descriptions) {
  const auto part = build_budget_partition(encoder_budget(p, rho, descriptions));
  if (part.num_blocks() > descriptions) {
    throw NumericFailure("build_encoder: budgeted partition needs " + std::to_string(part.num_blocks()) +
                         " blocks but only " + std::to_string(descriptions) + " descriptions are available");
  }
  return TaskEncoder::from_partition(part, descriptions);
}

TaskEncoder build_encoder(const Pmf& p, double rho, std::size_t descriptions) {
  auto best = build_budget_encoder(p, rho, descriptions);
  double best_moment = moment(best, p, rho);
  std::size_t tried = 1;
  for (std::size_t m = descriptions - 1; best_moment > 1.0 && tried < kEncoderFamilyScan && m_tilde(m, p.size()) > 0.0;
       --m, ++tried) {
    auto cand = build_budget_encoder(p, rho, m);
    const double v = moment(cand, p, rho);
    if (v < best_moment) {
      best = TaskEncoder(p.alphabet(), descriptions, cand.assign());
      best_moment = v;
    }
  }
  return best;
}

MismatchedEncoder build_mismatched_encoder(const Pmf& p, const Pmf& q, double rho, std::size_t descriptions) {
  if (!(p.alphabet() == q.alphabet())) throw InvalidArgument("mismatched encoder: alphabets differ");
  auto enc = build_budget_encoder(q, rho, descriptions);
  const double alpha = 1.0 / (1.0 + rho);
  const double delta = sundaresan_divergence(p, q, alpha);
  double bound = kInfinity;
  if (std::isfinite(delta)) {
    bound = 1.0 + std::exp2(rho * (renyi_entropy(p, rho) + delta - std::log2(m_tilde(descriptions, p.size()))));
  }
  return MismatchedEncoder{std::move(enc), bound};
}

SiTaskEncoder build_si_encoder(const JointPmf& joint, double rho, std::size_t descriptions) {
  require_descriptions(descriptions, joint.x_size());
  const auto cond = condition_joint(joint);
  std::vector<std::vector<std::size_t>> assign(joint.y_size());
  for (std::size_t y = 0; y < joint.y_size(); ++y) {
    if (!cond.x_given_y.defined(y)) {
      assign[y].assign(joint.x_size(), 0);
      continue;
    }
    assign[y] = build_encoder(cond.x_given_y.row_pmf(y), rho, descriptions).assign();
  }
  return SiTaskEncoder(joint.x_alphabet(), joint.y_alphabet(), descriptions, std::move(assign));
}

}  // namespace taskcode

#include "taskcode/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace taskcode {

Budget::Budget(Alphabet alphabet, std::vector<std::uint64_t> lambda)
    : alphabet_(std::move(alphabet)), lambda_(std::move(lambda)) {
  if (lambda_.size() != alphabet_.size()) throw InvalidArgument("budget: one lambda per symbol required");
  for (auto l : lambda_) {
    if (l == 0) throw InvalidArgument("budget: lambda must be at least 1");
    if (l != kUnbounded) mu_ += Rational(1, l);
  }
}

Partition::Partition(Alphabet alphabet, std::vector<std::vector<std::size_t>> blocks)
    : alphabet_(std::move(alphabet)), blocks_(std::move(blocks)) {
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  block_of_.assign(alphabet_.size(), none);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw InvalidArgument("partition: empty block");
    for (auto x : blocks_[b]) {
      if (x >= alphabet_.size()) throw InvalidArgument("partition: symbol index out of range");
      if (block_of_[x] != none) throw InvalidArgument("partition: blocks overlap");
      block_of_[x] = b;
    }
  }
  if (std::find(block_of_.begin(), block_of_.end(), none) != block_of_.end()) {
    throw InvalidArgument("partition: blocks do not cover the alphabet");
  }
}

Partition Partition::from_labels(Alphabet alphabet, const std::vector<std::size_t>& block_of) {
  if (block_of.size() != alphabet.size()) throw InvalidArgument("partition: one label per symbol required");
  std::size_t k = 0;
  for (auto b : block_of) k = std::max(k, b + 1);
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t x = 0; x < block_of.size(); ++x) blocks[block_of[x]].push_back(x);
  return Partition(std::move(alphabet), std::move(blocks));
}

Rational partition_identity(const Partition& part) {
  Rational total = 0;
  for (std::size_t x = 0; x < part.alphabet().size(); ++x) total += Rational(1, part.block_size(x));
  return total;
}

Partition build_budget_partition(const Budget& budget) {
  const std::size_t k = budget.alphabet().size();
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> first;
  std::vector<std::size_t> rest;
  for (std::size_t x = 0; x < k; ++x) (budget[x] >= k ? first : rest).push_back(x);
  if (!first.empty()) blocks.push_back(std::move(first));
  std::stable_sort(rest.begin(), rest.end(),
                   [&](std::size_t a, std::size_t b) { return budget[a] < budget[b]; });
  std::size_t pos = 0;
  while (pos < rest.size()) {
    const std::size_t take = std::min<std::size_t>(budget[rest[pos]], rest.size() - pos);
    blocks.emplace_back(rest.begin() + static_cast<std::ptrdiff_t>(pos),
                        rest.begin() + static_cast<std::ptrdiff_t>(pos + take));
    pos += take;
  }
  return Partition(budget.alphabet(), std::move(blocks));
}

std::int64_t subset_count_bound(const Rational& mu, std::size_t alphabet_size) {
  if (mu < 0) throw InvalidArgument("subset_count_bound: mu must be nonnegative");
  if (alphabet_size == 0) throw InvalidArgument("subset_count_bound: empty alphabet");
  // With a single symbol the log term vanishes and alpha -> 1+ is optimal.
  if (alphabet_size == 1) {
    const BigInt fl = numerator(mu) / denominator(mu);
    return static_cast<std::int64_t>(fl) + 2;
  }
  if (mu == 0) return 2;  // alpha -> infinity
  const double m = to_double(mu);
  const double lk = std::log(static_cast<double>(alphabet_size));
  auto value = [&](double t) { return std::exp(t) * m + lk / t + 2.0; };  // t = ln alpha
  // The objective is convex in t > 0; golden-section on a bracket around its minimum.
  double lo = 1e-9, hi = std::max(1.0, std::log(lk / m + 1.0) + 1.0);
  while (value(hi) < value(hi * 0.5)) hi *= 2.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
  double fa = value(a), fb = value(b);
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = value(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = value(b);
    }
  }
  const double best = std::min({value(0.5 * (lo + hi)), fa, fb, value(std::log(2.0))});
  // Absorb rounding so an exactly integral optimum is not floored one too low.
  return static_cast<std::int64_t>(std::floor(best + 1e-9));
}

}  // namespace taskcode

#pragma once

#include "taskcode/prob.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace taskcode {

// lambda(x) = kUnbounded stands for +infinity.
inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

// Per-symbol block-size caps lambda(x) >= 1 and mu = sum 1/lambda(x) (exact).
class Budget {
 public:
  Budget(Alphabet alphabet, std::vector<std::uint64_t> lambda);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::uint64_t>& lambda() const noexcept { return lambda_; }
  std::uint64_t operator[](std::size_t x) const { return lambda_[x]; }
  const Rational& mu() const noexcept { return mu_; }

 private:
  Alphabet alphabet_;
  std::vector<std::uint64_t> lambda_;
  Rational mu_;
};

// A set partition of an alphabet. Blocks keep the order they were given in;
// symbols inside a block are kept as given.
class Partition {
 public:
  Partition(Alphabet alphabet, std::vector<std::vector<std::size_t>> blocks);
  // Block index per symbol; block ids must be 0..k-1 with every id used.
  static Partition from_labels(Alphabet alphabet, const std::vector<std::size_t>& block_of);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  std::size_t block_of(std::size_t x) const { return block_of_.at(x); }
  // L(x): size of the block containing x
  std::size_t block_size(std::size_t x) const { return blocks_[block_of(x)].size(); }

 private:
  Alphabet alphabet_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

// sum_x 1/L(x), exactly. Always equals the number of blocks.
Rational partition_identity(const Partition& part);

// Budgeted partition: L(x) <= min(lambda(x), |X|) for every x. Symbols with
// lambda(x) >= |X| form the first block (alphabet order); the rest, sorted
// by (lambda, index), are cut greedily into prefix blocks whose size is the
// budget of their first element.
Partition build_budget_partition(const Budget& budget);

// min over alpha > 1 of floor(alpha mu + log_alpha k + 2).
std::int64_t subset_count_bound(const Rational& mu, std::size_t alphabet_size);

}  // namespace taskcode

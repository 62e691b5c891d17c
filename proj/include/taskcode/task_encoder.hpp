#pragma once

#include "taskcode/partition.hpp"
#include "taskcode/prob.hpp"

#include <optional>
#include <vector>

namespace taskcode {

// f: X -> {0, ..., M-1}. Describing x performs every task in f^{-1}(f(x)).
class TaskEncoder {
 public:
  TaskEncoder(Alphabet alphabet, std::size_t descriptions, std::vector<std::size_t> assign);
  // Block b of the partition gets description b.
  static TaskEncoder from_partition(const Partition& part, std::size_t descriptions);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t descriptions() const noexcept { return m_; }
  std::size_t operator()(std::size_t x) const { return assign_[x]; }
  const std::vector<std::size_t>& assign() const noexcept { return assign_; }

  // |f^{-1}(f(x))| per symbol
  std::vector<std::size_t> fiber_sizes() const;
  // Nonempty fibers in increasing description order.
  std::vector<std::vector<std::size_t>> fibers() const;
  std::size_t used_descriptions() const;
  Partition partition() const;

 private:
  Alphabet alphabet_;
  std::size_t m_;
  std::vector<std::size_t> assign_;
};

// f: X x Y -> {0, ..., M-1}; for each y the slice f(., y) is a TaskEncoder.
class SiTaskEncoder {
 public:
  SiTaskEncoder(Alphabet x_alphabet, Alphabet y_alphabet, std::size_t descriptions,
                std::vector<std::vector<std::size_t>> assign_by_y);

  const Alphabet& x_alphabet() const noexcept { return x_; }
  const Alphabet& y_alphabet() const noexcept { return y_; }
  std::size_t descriptions() const noexcept { return m_; }
  std::size_t operator()(std::size_t x, std::size_t y) const { return assign_[y][x]; }
  TaskEncoder slice(std::size_t y) const;

 private:
  Alphabet x_;
  Alphabet y_;
  std::size_t m_;
  std::vector<std::vector<std::size_t>> assign_;
};

// E |f^{-1}(f(X))|^rho
double moment(const TaskEncoder& enc, const Pmf& p, double rho);
// E |f^{-1}(f(X,Y),Y)|^rho
double moment_si(const SiTaskEncoder& enc, const JointPmf& joint, double rho);

// (M - log|X| - 2)/4, meaningful only when positive.
double m_tilde(std::size_t descriptions, std::size_t alphabet_size);

struct MomentBounds {
  double lower;
  std::optional<double> upper;  // present only when M > log|X| + 2
};
MomentBounds moment_bounds(const Pmf& p, double rho, std::size_t descriptions);
// Same bounds with the conditional Renyi entropy H(X|Y).
MomentBounds side_info_bounds(const JointPmf& joint, double rho, std::size_t descriptions);

// lambda(x) = ceil(beta P(x)^{-1/(1+rho)}) (+inf on zero mass) with
// beta = 2 sum P^{1/(1+rho)} / (M - log|X| - 2).
Budget encoder_budget(const Pmf& p, double rho, std::size_t descriptions);

// Budgeted-partition encoder into at most M descriptions. Requires M > log|X| + 2.
TaskEncoder build_budget_encoder(const Pmf& p, double rho, std::size_t descriptions);

// Best of build_budget_encoder over M' in (log|X| + 2, M], scanning down from
// M (at most kEncoderFamilyScan candidates). Never worse than the M
// construction and nonincreasing in M.
inline constexpr std::size_t kEncoderFamilyScan = 4096;
TaskEncoder build_encoder(const Pmf& p, double rho, std::size_t descriptions);

struct MismatchedEncoder {
  TaskEncoder encoder;
  double bound;  // 1 + 2^{rho(H(P) + Delta(P||Q) - log M~)}; +inf when Delta is
};
// build_budget_encoder designed for q; the bound is valid under p.
MismatchedEncoder build_mismatched_encoder(const Pmf& p, const Pmf& q, double rho, std::size_t descriptions);

// One build_encoder per y on P_{X|Y}(.|y); y with no mass get the constant encoder.
SiTaskEncoder build_si_encoder(const JointPmf& joint, double rho, std::size_t descriptions);

}  // namespace taskcode

#pragma once

#include "taskcode/common.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taskcode {

// An ordered set of distinct symbol labels. Either an explicit list or the
// n-fold power of an explicit list, in which case index i enumerates n-tuples
// in lexicographic order (first coordinate most significant) and labels are
// the coordinate labels joined with ','.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  // The n-tuple alphabet over `base`. Powers of powers flatten.
  static Alphabet power(const Alphabet& base, int n);
  // {"0", "1", ..., "k-1"}
  static Alphabet range(std::size_t k);

  std::size_t size() const noexcept { return size_; }
  int tuple_length() const noexcept { return power_; }
  bool is_power() const noexcept { return power_ > 1; }
  // The explicit alphabet tuples are drawn from (itself when not a power).
  Alphabet base() const;
  std::size_t base_size() const noexcept { return symbols_->size(); }

  std::string label(std::size_t i) const;
  std::optional<std::size_t> index_of(std::string_view label) const;

  // Coordinates of tuple i as base-alphabet indices.
  std::vector<std::size_t> digits(std::size_t i) const;
  void digits(std::size_t i, std::span<std::size_t> out) const;
  std::size_t compose(std::span<const std::size_t> digits) const;

  bool operator==(const Alphabet& other) const;

 private:
  Alphabet(std::shared_ptr<const std::vector<std::string>> symbols, int power);

  std::shared_ptr<const std::vector<std::string>> symbols_;
  int power_ = 1;
  std::size_t size_ = 0;
};

class Pmf {
 public:
  // Validating constructor: entries must be >= 0 and sum to 1 within `tol`.
  Pmf(Alphabet alphabet, std::vector<double> probs, double tol = 1e-12);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  std::vector<std::size_t> support() const;
  std::size_t support_size() const;
  bool is_uniform(double tol = 0.0) const;

 private:
  Alphabet alphabet_;
  std::vector<double> probs_;
};

// Rows indexed by x, columns by y.
class JointPmf {
 public:
  JointPmf(Alphabet x_alphabet, Alphabet y_alphabet,
           std::vector<std::vector<double>> probs, double tol = 1e-12);

  const Alphabet& x_alphabet() const noexcept { return x_; }
  const Alphabet& y_alphabet() const noexcept { return y_; }
  std::size_t x_size() const noexcept { return x_.size(); }
  std::size_t y_size() const noexcept { return y_.size(); }
  double operator()(std::size_t x, std::size_t y) const { return probs_[x][y]; }
  const std::vector<std::vector<double>>& rows() const noexcept { return probs_; }

  Pmf x_marginal() const;
  Pmf y_marginal() const;

 private:
  Alphabet x_;
  Alphabet y_;
  std::vector<std::vector<double>> probs_;
};

// A stochastic kernel W(out | in). Rows for inputs with no mass may be left
// undefined (see condition_joint); accessing them throws.
class Channel {
 public:
  Channel(Alphabet in_alphabet, Alphabet out_alphabet,
          std::vector<std::optional<std::vector<double>>> rows,
          double tol = 1e-12);

  const Alphabet& in_alphabet() const noexcept { return in_; }
  const Alphabet& out_alphabet() const noexcept { return out_; }
  bool defined(std::size_t in) const { return rows_.at(in).has_value(); }
  std::span<const double> row(std::size_t in) const;
  Pmf row_pmf(std::size_t in) const;

 private:
  Alphabet in_;
  Alphabet out_;
  std::vector<std::optional<std::vector<double>>> rows_;
};

// Normalizes nonnegative weights; zeros stay exactly zero.
Pmf make_pmf(const Alphabet& alphabet, std::span<const double> weights);
Pmf make_pmf(std::vector<std::string> labels, std::span<const double> weights);

Pmf uniform_pmf(const Alphabet& alphabet);

// P^n over the lexicographically ordered n-tuple alphabet.
Pmf product_pmf(const Pmf& p, int n);
// P_XY^n as a joint over X^n x Y^n.
JointPmf product_joint(const JointPmf& joint, int n);

// Probability of one particular tuple with the given per-symbol counts under P^n.
double tuple_probability(const Pmf& p, std::span<const std::size_t> counts);

struct Conditioned {
  Pmf y_marginal;
  Channel x_given_y;  // from Y to X; rows with P_Y(y) = 0 undefined
};
Conditioned condition_joint(const JointPmf& joint);

// P_Y(y) V(x|y) as a joint over X x Y. Undefined rows must carry zero mass.
JointPmf combine(const Pmf& y_marginal, const Channel& x_given_y);

JointPmf independent_joint(const Pmf& px, const Pmf& py);

// Right-hand side of the ceiling power inequality: ceil(xi)^rho < 1 + 2^rho xi^rho.
double ceiling_power_bound(double xi, double rho);

}  // namespace taskcode

#pragma once

#include "taskcode/task_encoder.hpp"

#include <vector>

namespace taskcode {

// Nonnegative finite per-task cost.
class CostFn {
 public:
  CostFn(Alphabet alphabet, std::vector<double> costs);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<double>& costs() const noexcept { return costs_; }
  double operator[](std::size_t x) const { return costs_[x]; }
  double max() const;
  double min() const;
  double expectation(const Pmf& p) const;
  // Average cost per task of tuple i of the n-tuple alphabet.
  double tuple_cost(const Alphabet& tuples, std::size_t i) const;

 private:
  Alphabet alphabet_;
  std::vector<double> costs_;
};

// E c(f, X^n) where c(f, x^n) sums c(x~^n) over the fiber of x^n.
double cost_moment(const TaskEncoder& enc, const Pmf& p, const CostFn& cost, int n);

// 2^{-nR} (sum_{c(x^n) > 0} sqrt(c(x^n) P^n(x^n)))^2; requires E c(X) > 0.
double cost_converse_bound(const Pmf& p, const CostFn& cost, double rate, int n);

// f = 0 on zero-cost tuples, 1 elsewhere.
TaskEncoder zero_cost_encoder(const CostFn& cost, int n);

}  // namespace taskcode

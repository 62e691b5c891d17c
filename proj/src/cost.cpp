#include "taskcode/cost.hpp"

#include <algorithm>
#include <cmath>

namespace taskcode {

CostFn::CostFn(Alphabet alphabet, std::vector<double> costs) : alphabet_(std::move(alphabet)), costs_(std::move(costs)) {
  if (costs_.size() != alphabet_.size()) throw InvalidArgument("cost: one value per symbol required");
  for (double c : costs_) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("cost: values must be finite and nonnegative");
  }
}

double CostFn::max() const { return *std::max_element(costs_.begin(), costs_.end()); }
double CostFn::min() const { return *std::min_element(costs_.begin(), costs_.end()); }

double CostFn::expectation(const Pmf& p) const {
  if (!(p.alphabet() == alphabet_)) throw InvalidArgument("cost: pmf alphabet differs");
  double e = 0.0;
  for (std::size_t x = 0; x < costs_.size(); ++x) e += p[x] * costs_[x];
  return e;
}

double CostFn::tuple_cost(const Alphabet& tuples, std::size_t i) const {
  double total = 0.0;
  for (auto d : tuples.digits(i)) total += costs_[d];
  return total / tuples.tuple_length();
}

namespace {

Alphabet tuple_alphabet(const Alphabet& base, int n) {
  if (n < 1) throw InvalidArgument("block length must be positive");
  return n == 1 ? base : Alphabet::power(base, n);
}

}  // namespace

double cost_moment(const TaskEncoder& enc, const Pmf& p, const CostFn& cost, int n) {
  if (!(p.alphabet() == cost.alphabet())) throw InvalidArgument("cost_moment: pmf and cost alphabets differ");
  const Alphabet tuples = tuple_alphabet(p.alphabet(), n);
  if (!(enc.alphabet() == tuples)) throw InvalidArgument("cost_moment: encoder is not over the n-tuple alphabet");
  const Pmf pn = product_pmf(p, n);
  std::vector<double> mass(enc.descriptions(), 0.0), fiber_cost(enc.descriptions(), 0.0);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    mass[enc(i)] += pn[i];
    fiber_cost[enc(i)] += cost.tuple_cost(tuples, i);
  }
  double total = 0.0;
  for (std::size_t m = 0; m < mass.size(); ++m) total += mass[m] * fiber_cost[m];
  return total;
}

double cost_converse_bound(const Pmf& p, const CostFn& cost, double rate, int n) {
  if (!(cost.expectation(p) > 0.0)) {
    throw InvalidArgument("cost_converse_bound: expected cost is zero; the two-description encoder achieves 0");
  }
  if (!(rate >= 0.0)) throw InvalidArgument("rate must be nonnegative");
  const Alphabet tuples = tuple_alphabet(p.alphabet(), n);
  const Pmf pn = product_pmf(p, n);
  double s = 0.0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const double c = cost.tuple_cost(tuples, i);
    if (c > 0.0) s += std::sqrt(c * pn[i]);
  }
  return std::exp2(-n * rate) * s * s;
}

TaskEncoder zero_cost_encoder(const CostFn& cost, int n) {
  const Alphabet tuples = tuple_alphabet(cost.alphabet(), n);
  check_cap(static_cast<long double>(tuples.size()), "tuple enumeration");
  std::vector<std::size_t> assign(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) assign[i] = cost.tuple_cost(tuples, i) > 0.0 ? 1 : 0;
  return TaskEncoder(tuples, 2, std::move(assign));
}

}  // namespace taskcode

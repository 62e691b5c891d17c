#include "taskcode/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace taskcode {
namespace {

void check_mass(std::span<const double> probs, double tol, const char* what) {
  double sum = 0.0;
  for (double v : probs) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument(std::string(what) + ": probabilities must be finite and nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw InvalidArgument(std::string(what) + ": total mass " + std::to_string(sum) +
                          " deviates from 1");
  }
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) {
  if (symbols.empty()) throw InvalidArgument("alphabet must be nonempty");
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols) {
    if (!seen.insert(s).second) throw InvalidArgument("duplicate alphabet label '" + s + "'");
  }
  size_ = symbols.size();
  symbols_ = std::make_shared<const std::vector<std::string>>(std::move(symbols));
}

Alphabet::Alphabet(std::shared_ptr<const std::vector<std::string>> symbols, int power)
    : symbols_(std::move(symbols)), power_(power) {
  size_ = checked_pow(symbols_->size(), power_, "tuple alphabet");
}

Alphabet Alphabet::power(const Alphabet& base, int n) {
  if (n < 1) throw InvalidArgument("tuple length must be at least 1");
  return Alphabet(base.symbols_, base.power_ * n);
}

Alphabet Alphabet::range(std::size_t k) {
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

Alphabet Alphabet::base() const { return Alphabet(symbols_, 1); }

std::string Alphabet::label(std::size_t i) const {
  if (i >= size_) throw InvalidArgument("symbol index out of range");
  if (power_ == 1) return (*symbols_)[i];
  std::string out;
  const auto d = digits(i);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k) out += ',';
    out += (*symbols_)[d[k]];
  }
  return out;
}

std::optional<std::size_t> Alphabet::index_of(std::string_view label) const {
  if (power_ == 1) {
    const auto it = std::find(symbols_->begin(), symbols_->end(), label);
    if (it == symbols_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_->begin());
  }
  std::vector<std::size_t> d;
  std::size_t start = 0;
  for (int k = 0; k < power_; ++k) {
    const auto end = k + 1 < power_ ? label.find(',', start) : label.size();
    if (end == std::string_view::npos) return std::nullopt;
    const auto part = label.substr(start, end - start);
    const auto it = std::find(symbols_->begin(), symbols_->end(), part);
    if (it == symbols_->end()) return std::nullopt;
    d.push_back(static_cast<std::size_t>(it - symbols_->begin()));
    start = end + 1;
  }
  if (start != label.size() + 1) return std::nullopt;
  return compose(d);
}

std::vector<std::size_t> Alphabet::digits(std::size_t i) const {
  std::vector<std::size_t> out(static_cast<std::size_t>(power_));
  digits(i, out);
  return out;
}

void Alphabet::digits(std::size_t i, std::span<std::size_t> out) const {
  const std::size_t k = symbols_->size();
  for (std::size_t pos = out.size(); pos-- > 0;) {
    out[pos] = i % k;
    i /= k;
  }
}

std::size_t Alphabet::compose(std::span<const std::size_t> digits) const {
  const std::size_t k = symbols_->size();
  std::size_t i = 0;
  for (std::size_t d : digits) i = i * k + d;
  return i;
}

bool Alphabet::operator==(const Alphabet& other) const {
  if (size_ != other.size_ || power_ != other.power_) return false;
  return symbols_ == other.symbols_ || *symbols_ == *other.symbols_;
}

// ---------------------------------------------------------------- Pmf

Pmf::Pmf(Alphabet alphabet, std::vector<double> probs, double tol)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  if (probs_.size() != alphabet_.size()) {
    throw InvalidArgument("probability vector length does not match the alphabet");
  }
  check_mass(probs_, tol, "pmf");
}

std::vector<std::size_t> Pmf::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] > 0.0) s.push_back(i);
  }
  return s;
}

std::size_t Pmf::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(), [](double v) { return v > 0.0; }));
}

bool Pmf::is_uniform(double tol) const {
  const double u = 1.0 / static_cast<double>(probs_.size());
  return std::all_of(probs_.begin(), probs_.end(),
                     [&](double v) { return std::abs(v - u) <= tol; });
}

// ---------------------------------------------------------------- JointPmf

JointPmf::JointPmf(Alphabet x_alphabet, Alphabet y_alphabet,
                   std::vector<std::vector<double>> probs, double tol)
    : x_(std::move(x_alphabet)), y_(std::move(y_alphabet)), probs_(std::move(probs)) {
  if (probs_.size() != x_.size()) throw InvalidArgument("joint: row count does not match X");
  std::vector<double> flat;
  flat.reserve(x_.size() * y_.size());
  for (const auto& row : probs_) {
    if (row.size() != y_.size()) throw InvalidArgument("joint: column count does not match Y");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  check_mass(flat, tol, "joint pmf");
}

Pmf JointPmf::x_marginal() const {
  std::vector<double> m(x_size(), 0.0);
  for (std::size_t x = 0; x < x_size(); ++x) {
    for (std::size_t y = 0; y < y_size(); ++y) m[x] += probs_[x][y];
  }
  return Pmf(x_, std::move(m), 1e-9);
}

Pmf JointPmf::y_marginal() const {
  std::vector<double> m(y_size(), 0.0);
  for (std::size_t x = 0; x < x_size(); ++x) {
    for (std::size_t y = 0; y < y_size(); ++y) m[y] += probs_[x][y];
  }
  return Pmf(y_, std::move(m), 1e-9);
}

// ---------------------------------------------------------------- Channel

Channel::Channel(Alphabet in_alphabet, Alphabet out_alphabet,
                 std::vector<std::optional<std::vector<double>>> rows, double tol)
    : in_(std::move(in_alphabet)), out_(std::move(out_alphabet)), rows_(std::move(rows)) {
  if (rows_.size() != in_.size()) throw InvalidArgument("channel: row count does not match input");
  for (const auto& r : rows_) {
    if (!r) continue;
    if (r->size() != out_.size()) throw InvalidArgument("channel: row length does not match output");
    check_mass(*r, tol, "channel row");
  }
}

std::span<const double> Channel::row(std::size_t in) const {
  const auto& r = rows_.at(in);
  if (!r) throw InvalidArgument("channel row for input '" + in_.label(in) + "' is undefined");
  return *r;
}

Pmf Channel::row_pmf(std::size_t in) const {
  const auto r = row(in);
  return Pmf(out_, std::vector<double>(r.begin(), r.end()), 1e-9);
}

// ---------------------------------------------------------------- operations

Pmf make_pmf(const Alphabet& alphabet, std::span<const double> weights) {
  if (weights.size() != alphabet.size()) {
    throw InvalidArgument("make_pmf: " + std::to_string(weights.size()) + " weights for " +
                          std::to_string(alphabet.size()) + " symbols");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("make_pmf: negative or non-finite weight");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidArgument("make_pmf: all weights are zero");
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& v : probs) v /= total;
  return Pmf(alphabet, std::move(probs), 1e-9);
}

Pmf make_pmf(std::vector<std::string> labels, std::span<const double> weights) {
  return make_pmf(Alphabet(std::move(labels)), weights);
}

Pmf uniform_pmf(const Alphabet& alphabet) {
  std::vector<double> w(alphabet.size(), 1.0);
  return make_pmf(alphabet, w);
}

Pmf product_pmf(const Pmf& p, int n) {
  if (n < 1) throw InvalidArgument("product_pmf: n must be positive");
  if (n == 1) return p;
  Alphabet tuples = Alphabet::power(p.alphabet(), n);
  const std::size_t k = p.size();
  // Lexicographic order: extend by one coordinate at a time, last coordinate fastest.
  std::vector<double> probs(p.probs().begin(), p.probs().end());
  for (int len = 2; len <= n; ++len) {
    std::vector<double> next(probs.size() * k);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      for (std::size_t a = 0; a < k; ++a) next[i * k + a] = probs[i] * p[a];
    }
    probs = std::move(next);
  }
  return Pmf(std::move(tuples), std::move(probs), 1e-9);
}

JointPmf product_joint(const JointPmf& joint, int n) {
  if (n < 1) throw InvalidArgument("product_joint: n must be positive");
  const Alphabet xs = Alphabet::power(joint.x_alphabet(), n);
  const Alphabet ys = Alphabet::power(joint.y_alphabet(), n);
  check_cap(static_cast<long double>(xs.size()) * ys.size(), "joint tuple table");
  std::vector<std::vector<double>> probs(xs.size(), std::vector<double>(ys.size()));
  std::vector<std::size_t> dx(n), dy(n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs.digits(i, dx);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      ys.digits(j, dy);
      double v = 1.0;
      for (int k = 0; k < n && v > 0.0; ++k) v *= joint(dx[k], dy[k]);
      probs[i][j] = v;
    }
  }
  return JointPmf(xs, ys, std::move(probs), 1e-9);
}

double tuple_probability(const Pmf& p, std::span<const std::size_t> counts) {
  double logp = 0.0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] == 0) continue;
    if (p[a] == 0.0) return 0.0;
    logp += static_cast<double>(counts[a]) * std::log(p[a]);
  }
  return std::exp(logp);
}

Conditioned condition_joint(const JointPmf& joint) {
  Pmf py = joint.y_marginal();
  std::vector<std::optional<std::vector<double>>> rows(joint.y_size());
  for (std::size_t y = 0; y < joint.y_size(); ++y) {
    double mass = 0.0;
    for (std::size_t x = 0; x < joint.x_size(); ++x) mass += joint(x, y);
    if (!(mass > 0.0)) continue;
    std::vector<double> r(joint.x_size());
    for (std::size_t x = 0; x < joint.x_size(); ++x) r[x] = joint(x, y) / mass;
    rows[y] = std::move(r);
  }
  Channel ch(joint.y_alphabet(), joint.x_alphabet(), std::move(rows), 1e-9);
  return Conditioned{std::move(py), std::move(ch)};
}

JointPmf combine(const Pmf& y_marginal, const Channel& x_given_y) {
  if (!(y_marginal.alphabet() == x_given_y.in_alphabet())) {
    throw InvalidArgument("combine: marginal and channel alphabets differ");
  }
  const std::size_t nx = x_given_y.out_alphabet().size();
  const std::size_t ny = y_marginal.size();
  std::vector<std::vector<double>> probs(nx, std::vector<double>(ny, 0.0));
  for (std::size_t y = 0; y < ny; ++y) {
    if (y_marginal[y] == 0.0) continue;
    const auto r = x_given_y.row(y);
    for (std::size_t x = 0; x < nx; ++x) probs[x][y] = y_marginal[y] * r[x];
  }
  return JointPmf(x_given_y.out_alphabet(), y_marginal.alphabet(), std::move(probs), 1e-9);
}

JointPmf independent_joint(const Pmf& px, const Pmf& py) {
  std::vector<std::vector<double>> probs(px.size(), std::vector<double>(py.size()));
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < py.size(); ++y) probs[x][y] = px[x] * py[y];
  }
  return JointPmf(px.alphabet(), py.alphabet(), std::move(probs), 1e-9);
}

double ceiling_power_bound(double xi, double rho) {
  return 1.0 + std::pow(2.0, rho) * std::pow(xi, rho);
}

}  // namespace taskcode

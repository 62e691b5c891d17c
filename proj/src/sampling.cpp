#include "taskcode/sampling.hpp"

#include <cmath>

namespace taskcode {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(Rng& rng, std::size_t k) {
  if (k == 0) throw InvalidArgument("uniform_index: empty range");
  return static_cast<std::size_t>(rng() % k);
}

namespace {

std::vector<double> dirichlet(Rng& rng, std::size_t k, double zero_fraction) {
  std::vector<double> w(k);
  bool any = false;
  for (auto& v : w) {
    const bool zero = zero_fraction > 0.0 && uniform01(rng) < zero_fraction;
    v = zero ? 0.0 : -std::log1p(-uniform01(rng)) + 1e-12;
    any |= v > 0.0;
  }
  if (!any) w[uniform_index(rng, k)] = 1.0;
  return w;
}

}  // namespace

Pmf random_pmf(Rng& rng, const Alphabet& alphabet, double zero_fraction) {
  return make_pmf(alphabet, dirichlet(rng, alphabet.size(), zero_fraction));
}

JointPmf random_joint(Rng& rng, const Alphabet& x, const Alphabet& y, double zero_fraction) {
  const auto flat = make_pmf(Alphabet::range(x.size() * y.size()), dirichlet(rng, x.size() * y.size(), zero_fraction));
  std::vector<std::vector<double>> rows(x.size(), std::vector<double>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) rows[i][j] = flat[i * y.size() + j];
  }
  return JointPmf(x, y, std::move(rows), 1e-9);
}

}  // namespace taskcode

#include "support.hpp"

#include "taskcode/oracle.hpp"
#include "taskcode/task_encoder.hpp"

#include <cmath>
#include <limits>

namespace {

// min over all maps X x Y -> {0..m-1}, by direct enumeration of the table
double brute_si(const tc::JointPmf& j, double rho, std::size_t m) {
  const std::size_t nx = j.x_size(), ny = j.y_size(), cells = nx * ny;
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= m;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::size_t>> assign(ny, std::vector<std::size_t>(nx));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) {
        assign[y][x] = c % m;
        c /= m;
      }
    }
    best = std::min(best, tc::moment_si(tc::SiTaskEncoder(j.x_alphabet(), j.y_alphabet(), m, assign), j, rho));
  }
  return best;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("reference minima") {
  const auto p = pmf({0.4, 0.3, 0.15, 0.1, 0.05});
  CHECK(tc::exact_min_moment(p, 1.0, 1).min_moment == Approx(5.0));
  CHECK(tc::exact_min_moment(p, 0.5, 2).min_moment == Approx(1.5095647359318296).epsilon(1e-12));
  CHECK(tc::exact_min_moment(p, 1.0, 2).min_moment == Approx(2.3).epsilon(1e-12));
  CHECK(tc::exact_min_moment(p, 2.0, 2).min_moment == Approx(5.5).epsilon(1e-12));
  CHECK(tc::exact_min_moment(p, 0.5, 3).min_moment == Approx(1.219615242270663).epsilon(1e-12));
  CHECK(tc::exact_min_moment(p, 1.0, 3).min_moment == Approx(1.6).epsilon(1e-12));
  CHECK(tc::exact_min_moment(p, 2.0, 3).min_moment == Approx(2.8).epsilon(1e-12));
  CHECK(tc::exact_min_moment(p, 1.0, 4).min_moment == Approx(1.15).epsilon(1e-12));
  CHECK(tc::exact_min_moment(p, 2.0, 4).min_moment == Approx(1.45).epsilon(1e-12));

  const auto r = tc::exact_min_moment(pmf({1, 1, 1, 1}), 1.0, 2);
  CHECK(r.min_moment == Approx(2.0));
  CHECK(r.blocks_used == 2);
  CHECK(r.argmin.block_size(0) == 2);
}

TEST_CASE("argmin achieves the minimum") {
  tc::Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    const auto p = tc::random_pmf(rng, tc::Alphabet::range(2 + tc::uniform_index(rng, 7)), 0.2);
    const std::size_t m = 1 + tc::uniform_index(rng, 6);
    const auto r = tc::exact_min_moment(p, 1.5, m);
    CHECK(r.blocks_used <= m);
    CHECK(r.blocks_used == r.argmin.num_blocks());
    CHECK(tc::moment(tc::TaskEncoder::from_partition(r.argmin, m), p, 1.5) == Approx(r.min_moment).epsilon(1e-12));
  }
}

TEST_CASE("nonincreasing in M and equal to one exactly when every positive symbol can be alone") {
  tc::Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + tc::uniform_index(rng, 6);
    const auto p = tc::random_pmf(rng, tc::Alphabet::range(k), 0.3);
    // zero-mass symbols still need a block of their own to keep fibers of
    // positive symbols at size one
    const std::size_t needed = p.support_size() + (p.support_size() < k ? 1 : 0);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m <= k + 1; ++m) {
      const double v = tc::exact_min_moment(p, 1.0, m).min_moment;
      CHECK(v <= prev * (1 + 1e-12));
      CHECK((std::abs(v - 1.0) < 1e-12) == (m >= needed));
      prev = v;
    }
  }
}

TEST_CASE("uniform sources with M dividing |X| meet the integral optimum") {
  for (std::size_t k : {4, 6, 8}) {
    for (std::size_t m = 1; m <= k; ++m) {
      if (k % m) continue;
      const double rho = 1.3;
      const auto p = tc::uniform_pmf(tc::Alphabet::range(k));
      const double expect = std::pow(static_cast<double>(k / m), rho);
      CHECK(tc::exact_min_moment(p, rho, m).min_moment == Approx(expect).epsilon(1e-12));
      CHECK(tc::moment_bounds(p, rho, m).lower == Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("grouping the unlikely symbols is not always optimal") {
  // Isolating the most likely symbol costs 0.3 + 0.7 * 3 = 2.4; two pairs cost 2.
  const auto p = pmf({0.3, 0.3, 0.2, 0.2});
  const auto r = tc::exact_min_moment(p, 1.0, 2);
  CHECK(r.min_moment == Approx(2.0));
  CHECK(r.argmin.block_size(0) == 2);
  CHECK(r.argmin.block_of(0) == r.argmin.block_of(1));
  CHECK(tc::moment(tc::TaskEncoder(p.alphabet(), 2, {0, 1, 1, 1}), p, 1.0) == Approx(2.4));
}

TEST_CASE("side information separates over y") {
  const auto j = joint({{0.3, 0.05}, {0.1, 0.2}, {0.05, 0.3}});
  CHECK(tc::exact_min_moment_si(j, 1.0, 1).min_moment == Approx(3.0));
  CHECK(tc::exact_min_moment_si(j, 1.0, 2).min_moment == Approx(1.4).epsilon(1e-12));
  tc::Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const auto r = tc::random_joint(rng, tc::Alphabet::range(3), tc::Alphabet::range(2), 0.2);
    CHECK(tc::exact_min_moment_si(r, 1.0, 2).min_moment == Approx(brute_si(r, 1.0, 2)).epsilon(1e-12));
  }
  const auto px = pmf({0.5, 0.3, 0.2}), py = pmf({0.6, 0.4});
  CHECK(tc::exact_min_moment_si(tc::independent_joint(px, py), 2.0, 2).min_moment ==
        Approx(tc::exact_min_moment(px, 2.0, 2).min_moment).epsilon(1e-12));
  const auto diag = joint({{0.5, 0, 0}, {0, 0.25, 0}, {0, 0, 0.25}});
  CHECK(tc::exact_min_moment_si(diag, 1.0, 2).min_moment == Approx(1.0));
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(tc::exact_min_moment(tc::uniform_pmf(tc::Alphabet::range(13)), 1.0, 2), tc::InvalidArgument);
}

}

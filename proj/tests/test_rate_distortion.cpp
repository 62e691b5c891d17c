#include "support.hpp"

#include "taskcode/rate_distortion.hpp"
#include "taskcode/renyi.hpp"

#include <cmath>

TEST_SUITE("rate_distortion") {

TEST_CASE("reference values") {
  CHECK(tc::binary_hamming_renyi_rd(0.25, 0.1, 1.0) == Approx(0.430973033363710).epsilon(1e-10));
  CHECK(tc::binary_hamming_renyi_rd(0.25, 0.0, 1.0) == Approx(0.899968626952992).epsilon(1e-12));
  CHECK(tc::binary_hamming_renyi_rd(0.25, 0.32, 1.0) == 0.0);
  CHECK(tc::binary_hamming_renyi_rd(0.25, 0.31, 1.0) > 0.0);
}

TEST_CASE("classical R(Q, D) for a Bernoulli source") {
  const auto a = tc::Alphabet::range(2);
  const auto d = tc::Distortion::hamming(a);
  for (double q : {0.1, 0.25, 0.4}) {
    const auto src = tc::make_pmf(a, std::vector<double>{q, 1.0 - q});
    for (double level : {0.0, 0.02, 0.05, 0.09}) {
      CHECK(tc::rd_function(src, d, level) == Approx(tc::binary_entropy(q) - tc::binary_entropy(level)).epsilon(1e-8));
    }
    CHECK(tc::rd_function(src, d, q) == 0.0);
  }
}

TEST_CASE("classical R(Q, D) is convex and nonincreasing") {
  const auto a = tc::Alphabet::range(3);
  const auto d = tc::Distortion::hamming(a);
  const auto q = pmf({0.5, 0.3, 0.2});
  std::vector<double> r;
  for (int k = 0; k <= 10; ++k) r.push_back(tc::rd_function(q, d, 0.05 * k));
  for (std::size_t k = 1; k < r.size(); ++k) CHECK(r[k] <= r[k - 1] + 1e-9);
  for (std::size_t k = 1; k + 1 < r.size(); ++k) CHECK(r[k] <= 0.5 * (r[k - 1] + r[k + 1]) + 1e-8);
  CHECK(r[0] == Approx(tc::shannon_entropy(q)).epsilon(1e-8));
}

TEST_CASE("numeric Renyi rate-distortion matches the binary closed form") {
  const auto a = tc::Alphabet::range(2);
  const auto d = tc::Distortion::hamming(a);
  const auto p = tc::make_pmf(a, std::vector<double>{0.25, 0.75});
  for (double rho : {0.1, 1.0, 10.0}) {
    for (double level : {0.0, 0.1, 0.2, 0.3, 0.4}) {
      CHECK(tc::renyi_rd(p, d, level, rho) == Approx(tc::binary_hamming_renyi_rd(0.25, level, rho)).epsilon(1e-6));
    }
  }
}

TEST_CASE("Renyi rate-distortion sits above R(P, D) and orders in rho") {
  const auto a = tc::Alphabet::range(3);
  const auto d = tc::Distortion::hamming(a);
  const auto p = pmf({0.6, 0.3, 0.1});
  for (double level : {0.0, 0.1, 0.2}) {
    const double r0 = tc::rd_function(p, d, level);
    double prev = r0;
    for (double rho : {0.1, 1.0, 10.0}) {
      const double v = tc::renyi_rd(p, d, level, rho);
      CHECK(v >= prev - 1e-6);
      prev = v;
    }
  }
  CHECK(tc::renyi_rd(p, d, 0.0, 1.0) == Approx(tc::renyi_entropy(p, 1.0)).epsilon(1e-6));
}

TEST_CASE("seeded restarts are reproducible") {
  const auto a = tc::Alphabet::range(3);
  const auto d = tc::Distortion::hamming(a);
  const auto p = pmf({0.6, 0.3, 0.1});
  tc::RenyiRdOptions o;
  o.seed = 5;
  CHECK(tc::renyi_rd(p, d, 0.1, 1.0, o) == tc::renyi_rd(p, d, 0.1, 1.0, o));
}

TEST_CASE("distortion validation") {
  const auto a = tc::Alphabet::range(2);
  CHECK_THROWS_AS(tc::Distortion(a, a, {{1, 1}, {0, 1}}), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::Distortion(a, a, {{0, -1}, {0, 1}}), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::binary_hamming_renyi_rd(0.0, 0.1, 1.0), tc::InvalidArgument);
}

}

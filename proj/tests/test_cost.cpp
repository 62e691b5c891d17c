#include "support.hpp"

#include "taskcode/cost.hpp"
#include "taskcode/universal.hpp"

#include <cmath>

TEST_SUITE("cost") {

TEST_CASE("reference converse") {
  const auto a = tc::Alphabet::range(2);
  const tc::CostFn c(a, {0.0, 1.0});
  CHECK(tc::cost_converse_bound(pmf({0.5, 0.5}), c, 0.5, 1) == Approx(0.353553390593274).epsilon(1e-13));
  CHECK_THROWS_AS(tc::cost_converse_bound(pmf({1, 0}), c, 0.5, 1), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::CostFn(a, {0.0, -1.0}), tc::InvalidArgument);
}

TEST_CASE("cost moment of simple encoders") {
  const auto a = tc::Alphabet::range(2);
  const tc::CostFn c(a, {1.0, 3.0});
  const auto p = pmf({0.25, 0.75});
  CHECK(c.expectation(p) == Approx(2.5));
  // singletons: E c(X)
  CHECK(tc::cost_moment(tc::TaskEncoder(a, 2, {0, 1}), p, c, 1) == Approx(2.5));
  // one fiber: every task is performed
  CHECK(tc::cost_moment(tc::TaskEncoder(a, 1, {0, 0}), p, c, 1) == Approx(4.0));
  const auto a2 = tc::Alphabet::power(a, 2);
  CHECK(c.tuple_cost(a2, *a2.index_of("0,1")) == Approx(2.0));
}

TEST_CASE("zero-cost encoder uses two descriptions") {
  const tc::CostFn c(tc::Alphabet::range(3), {0.0, 0.0, 2.0});
  const auto enc = tc::zero_cost_encoder(c, 2);
  CHECK(enc.descriptions() == 2);
  const auto p = pmf({0.3, 0.3, 0.4});
  CHECK(tc::cost_moment(enc, p, c, 2) >= tc::cost_converse_bound(p, c, 0.5, 2));
}

TEST_CASE("converse holds on every small encoder") {
  const auto a = tc::Alphabet::range(2);
  tc::Rng rng(71);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = tc::random_pmf(rng, a);
    const tc::CostFn c(a, {tc::uniform01(rng), 0.1 + tc::uniform01(rng)});
    for (int n = 1; n <= 3; ++n) {
      const auto tuples = tc::Alphabet::power(a, n);
      for (std::size_t m = 1; m <= 4; ++m) {
        const double rate = std::log2(static_cast<double>(m)) / n;
        const double bound = tc::cost_converse_bound(p, c, rate, n);
        std::size_t total = 1;
        for (std::size_t i = 0; i < tuples.size(); ++i) total *= m;
        std::vector<std::size_t> assign(tuples.size());
        for (std::size_t code = 0; code < total; ++code) {
          std::size_t r = code;
          for (auto& v : assign) {
            v = r % m;
            r /= m;
          }
          CHECK(tc::cost_moment(tc::TaskEncoder(tuples, m, assign), p, c, n) >= bound * (1 - 1e-12));
        }
      }
    }
  }
}

TEST_CASE("universal encoders approach the expected cost above the entropy") {
  const auto a = tc::Alphabet::range(2);
  const tc::CostFn c(a, {0.0, 1.0});
  const auto p = pmf({0.25, 0.75});
  const auto enc = tc::build_universal_encoder({10, 1.0}, a);
  CHECK(std::abs(tc::cost_moment(enc, p, c, 10) - c.expectation(p)) <= 0.05);
}

}

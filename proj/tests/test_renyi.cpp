#include "support.hpp"

#include "taskcode/renyi.hpp"

#include <cmath>

TEST_SUITE("renyi") {

TEST_CASE("reference values") {
  const auto p = pmf({0.25, 0.75});
  CHECK(tc::renyi_entropy(p, 1.0) == Approx(0.899968626952992).epsilon(1e-13));
  CHECK(tc::renyi_entropy(p, 0.1) == Approx(0.826363730792384).epsilon(1e-13));
  CHECK(tc::renyi_entropy(p, 10.0) == Approx(0.981226006929215).epsilon(1e-13));

  const auto j = joint({{0.5, 0.0}, {0.25, 0.25}});
  CHECK(tc::conditional_renyi(j, 1.0) == Approx(0.771553303163612).epsilon(1e-13));

  const auto u = pmf({0.5, 0.5});
  CHECK(tc::sundaresan_divergence(u, p, 0.5) == Approx(0.107487376592414).epsilon(1e-13));
  CHECK(tc::renyi_divergence(u, p, 0.5) == Approx(0.100031373047008).epsilon(1e-13));
  CHECK(tc::kl_divergence(u, p) == Approx(0.207518749639422).epsilon(1e-13));

  CHECK(tc::binary_entropy(0.1) == Approx(0.468995593589281).epsilon(1e-13));
  CHECK(tc::inverse_binary_entropy(0.899968626952992) == Approx(0.315991184729631).epsilon(1e-10));
  CHECK(tc::tilted_pmf(p, 1.0)[0] == Approx(0.366025403784439).epsilon(1e-13));
}

TEST_CASE("order parameters") {
  CHECK(tc::OrderParam::from_rho(1.0).alpha() == 0.5);
  CHECK(tc::OrderParam::from_alpha(0.2).rho() == Approx(4.0));
  CHECK_THROWS_AS(tc::OrderParam::from_alpha(1.5), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::renyi_entropy(pmf({1, 1}), 0.0), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::sundaresan_divergence(pmf({1, 1}), pmf({1, 1}), 1.0), tc::InvalidArgument);
}

TEST_CASE("entropy sandwich and extremes") {
  tc::Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const auto p = tc::random_pmf(rng, tc::Alphabet::range(2 + tc::uniform_index(rng, 7)), 0.25);
    const double hs = tc::shannon_entropy(p), hmax = std::log2(static_cast<double>(p.support_size()));
    double prev = hs;
    for (double rho : {1e-3, 0.3, 1.0, 3.0, 30.0}) {
      const double h = tc::renyi_entropy(p, rho);
      CHECK(h >= prev - 1e-12);
      CHECK(h <= hmax + 1e-12);
      prev = h;
    }
    CHECK(tc::renyi_entropy(p, 1e-6) == Approx(hs).epsilon(1e-4));
    CHECK(tc::renyi_entropy(p, 1e6) == Approx(hmax).epsilon(1e-4));
  }
  CHECK(tc::renyi_entropy(pmf({1, 1, 1, 1}), 2.0) == Approx(2.0));
  CHECK(tc::renyi_entropy(pmf({0, 1, 0}), 2.0) == Approx(0.0));
}

TEST_CASE("conditional entropy") {
  tc::Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const auto px = tc::random_pmf(rng, tc::Alphabet::range(4));
    const auto py = tc::random_pmf(rng, tc::Alphabet::range(3));
    const double rho = 0.2 + 3.0 * tc::uniform01(rng);
    // independent Y carries no information
    CHECK(tc::conditional_renyi(tc::independent_joint(px, py), rho) == Approx(tc::renyi_entropy(px, rho)).epsilon(1e-12));
    const auto j = tc::random_joint(rng, tc::Alphabet::range(4), tc::Alphabet::range(3), 0.2);
    CHECK(tc::conditional_renyi(j, rho) <= tc::renyi_entropy(j.x_marginal(), rho) + 1e-12);
  }
}

TEST_CASE("variational identity") {
  tc::Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto p = tc::random_pmf(rng, tc::Alphabet::range(2 + tc::uniform_index(rng, 6)), 0.2);
    const double rho = 0.5 * std::pow(2.0, static_cast<double>(tc::uniform_index(rng, 3)));
    const double h = tc::renyi_entropy(p, rho);
    CHECK(tc::variational_entropy(p, rho).value == Approx(h).epsilon(1e-9));
    CHECK(tc::tilted_objective(tc::tilted_pmf(p, rho), p, rho) == Approx(h).epsilon(1e-12));
    // any other Q does no better
    const auto q = tc::random_pmf(rng, p.alphabet());
    CHECK(tc::tilted_objective(q, p, rho) <= h + 1e-12);
  }
}

TEST_CASE("conditional variational identity") {
  tc::Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    const auto j = tc::random_joint(rng, tc::Alphabet::range(3), tc::Alphabet::range(3), 0.2);
    const double rho = 0.5 * std::pow(2.0, static_cast<double>(tc::uniform_index(rng, 3)));
    const double h = tc::conditional_renyi(j, rho);
    const auto v = tc::variational_conditional(j, rho);
    CHECK(v.value == Approx(h).epsilon(1e-9));
    CHECK(tc::conditional_tilted_objective(tc::combine(v.q_star, v.v_star), j, rho) == Approx(h).epsilon(1e-12));
  }
}

TEST_CASE("sundaresan divergence properties") {
  tc::Rng rng(25);
  for (int t = 0; t < 200; ++t) {
    const tc::Alphabet a = tc::Alphabet::range(2 + tc::uniform_index(rng, 4));
    const auto p = tc::random_pmf(rng, a), q = tc::random_pmf(rng, a);
    for (double alpha : {0.2, 0.5, 0.8, 1.5, 3.0}) {
      const double d = tc::sundaresan_divergence(p, q, alpha);
      CHECK(d >= -1e-12);
      CHECK(tc::sundaresan_divergence(p, p, alpha) == Approx(0.0).epsilon(1e-12));
      const auto p2 = tc::product_pmf(p, 2), q2 = tc::product_pmf(q, 2);
      CHECK(tc::sundaresan_divergence(p2, q2, alpha) == Approx(2.0 * d).epsilon(1e-9));
      // the tilted pair of order alpha recovers Renyi's divergence of order 1/alpha
      const double rho = 1.0 / alpha - 1.0;
      if (rho > 0.0) {
        const auto pt = tc::tilted_pmf(p, rho), qt = tc::tilted_pmf(q, rho);
        CHECK(d == Approx(tc::renyi_divergence(pt, qt, 1.0 / alpha)).epsilon(1e-9));
      }
    }
    CHECK(tc::sundaresan_divergence(p, q, 1.0 + 1e-4) == Approx(tc::kl_divergence(p, q)).epsilon(1e-3));
    CHECK(tc::sundaresan_divergence(p, q, 1e-4) == Approx(tc::sundaresan_limit_zero(p, q)).epsilon(1e-3));
    CHECK(tc::sundaresan_divergence(p, q, 1e5) == Approx(tc::sundaresan_limit_infinity(p, q)).epsilon(1e-3));
  }
}

TEST_CASE("divergence infinities") {
  const auto p = pmf({0.5, 0.5, 0.0}), q = pmf({1.0, 0.0, 0.0});
  CHECK(std::isinf(tc::sundaresan_divergence(p, q, 0.5)));
  CHECK(std::isinf(tc::kl_divergence(p, q)));
  CHECK(std::isinf(tc::renyi_divergence(p, q, 2.0)));
  // alpha > 1: symbols outside supp(Q) drop out
  CHECK(std::isfinite(tc::sundaresan_divergence(p, q, 2.0)));
  CHECK(std::isinf(tc::sundaresan_divergence(pmf({0, 1}), pmf({1, 0}), 2.0)));
}

TEST_CASE("binary entropy inverse") {
  for (double x = 0.0; x <= 0.5; x += 0.01) CHECK(tc::inverse_binary_entropy(tc::binary_entropy(x)) == Approx(x).epsilon(1e-9));
  CHECK(tc::inverse_binary_entropy(1.5) == 0.5);
}

}

#include "support.hpp"

#include "taskcode/partition.hpp"

#include <algorithm>

namespace {

tc::Partition random_partition(tc::Rng& rng, std::size_t k) {
  std::vector<std::size_t> labels(k);
  std::size_t used = 0;
  for (auto& l : labels) {
    l = tc::uniform_index(rng, used + 1);
    used = std::max(used, l + 1);
  }
  return tc::Partition::from_labels(tc::Alphabet::range(k), labels);
}

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("identity on fixed partitions") {
  const tc::Alphabet a({"a", "b", "c", "d"});
  CHECK(tc::partition_identity(tc::Partition(a, {{0, 1}, {2, 3}})) == tc::Rational(2));
  CHECK(tc::partition_identity(tc::Partition(a, {{0}, {1}, {2}, {3}})) == tc::Rational(4));
  const tc::Partition three(a, {{0}, {1}, {2, 3}});
  CHECK(tc::partition_identity(three) == tc::Rational(3));
  CHECK(three.block_size(3) == 2);
  CHECK(three.block_of(1) == 1);
}

TEST_CASE("identity holds exactly on random partitions") {
  tc::Rng rng(31);
  for (int t = 0; t < 2000; ++t) {
    const auto p = random_partition(rng, 1 + tc::uniform_index(rng, 40));
    CHECK(tc::partition_identity(p) == tc::Rational(p.num_blocks()));
  }
}

TEST_CASE("partition validation") {
  const auto a = tc::Alphabet::range(3);
  CHECK_THROWS_AS(tc::Partition(a, {{0, 1}}), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::Partition(a, {{0, 1}, {1, 2}}), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::Partition(a, {{0, 1, 2}, {}}), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::Partition::from_labels(a, {0, 2, 2}), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::Budget(a, {1, 0, 1}), tc::InvalidArgument);
}

TEST_CASE("budgeted construction on the four-symbol example") {
  const tc::Budget b(tc::Alphabet({"a", "b", "c", "d"}), {1, 2, 4, 4});
  CHECK(b.mu() == tc::Rational(2));
  const auto part = tc::build_budget_partition(b);
  REQUIRE(part.num_blocks() == 3);
  CHECK(part.blocks()[0] == std::vector<std::size_t>{2, 3});
  CHECK(part.blocks()[1] == std::vector<std::size_t>{0});
  CHECK(part.blocks()[2] == std::vector<std::size_t>{1});
}

TEST_CASE("budgeted construction edge cases") {
  const auto a = tc::Alphabet::range(5);
  const auto all = tc::build_budget_partition(tc::Budget(a, std::vector<std::uint64_t>(5, tc::kUnbounded)));
  CHECK(all.num_blocks() == 1);
  const auto ones = tc::build_budget_partition(tc::Budget(a, std::vector<std::uint64_t>(5, 1)));
  CHECK(ones.num_blocks() == 5);
  const auto single = tc::build_budget_partition(tc::Budget(tc::Alphabet::range(1), {1}));
  CHECK(single.num_blocks() == 1);
  CHECK(tc::subset_count_bound(tc::Rational(0), 7) >= 1);
  CHECK(tc::subset_count_bound(tc::Rational(1), 1) == 3);
}

TEST_CASE("budgeted construction respects caps and the count bound") {
  tc::Rng rng(32);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t k = 1 + tc::uniform_index(rng, 40);
    std::vector<std::uint64_t> lambda(k);
    for (auto& l : lambda) l = tc::uniform01(rng) < 0.1 ? tc::kUnbounded : 1 + tc::uniform_index(rng, 2 * k);
    const tc::Budget b(tc::Alphabet::range(k), lambda);
    const auto part = tc::build_budget_partition(b);
    for (std::size_t x = 0; x < k; ++x) CHECK(part.block_size(x) <= std::min<std::uint64_t>(lambda[x], k));
    CHECK(static_cast<std::int64_t>(part.num_blocks()) <= tc::subset_count_bound(b.mu(), k));
  }
}

}

#include "support.hpp"

#include "taskcode/io.hpp"

TEST_SUITE("io") {

TEST_CASE("pmf json") {
  const auto j = tc::Json::parse(R"({"alphabet": ["a", "b"], "probs": [0.25, 0.75]})");
  const auto p = tc::pmf_from_json(j);
  CHECK(p.alphabet().label(1) == "b");
  CHECK(tc::to_json(p) == j);
  const auto off = tc::Json::parse(R"({"alphabet": ["a", "b"], "probs": [1, 2]})");
  CHECK_THROWS_AS(tc::pmf_from_json(off), tc::InvalidArgument);
  CHECK(tc::pmf_from_json(off, true)[1] == Approx(2.0 / 3.0));
  CHECK_THROWS_AS(tc::pmf_from_json(tc::Json::parse(R"({"alphabet": ["a"]})")), tc::InvalidArgument);
  CHECK_THROWS_AS(tc::pmf_from_json(tc::Json::parse(R"({"alphabet": ["a", "b"], "probs": [1]})")), tc::InvalidArgument);
  // within 1e-9 is accepted
  CHECK_NOTHROW(tc::pmf_from_json(tc::Json::parse(R"({"alphabet": ["a", "b"], "probs": [0.5, 0.5000000005]})")));
}

TEST_CASE("joint json") {
  const auto j = tc::Json::parse(R"({"x_alphabet": ["0", "1"], "y_alphabet": ["u", "v"], "probs": [[0.5, 0], [0.25, 0.25]]})");
  const auto jp = tc::joint_from_json(j);
  CHECK(jp(1, 1) == 0.25);
  CHECK(tc::to_json(jp) == j);
}

TEST_CASE("encoder and partition round trips") {
  const tc::Alphabet a({"a", "b", "c"});
  const tc::TaskEncoder enc(a, 4, {3, 0, 3});
  const auto j = tc::to_json(enc);
  CHECK(j["M"] == 4);
  CHECK(j["assign"]["a"] == 4);
  const auto back = tc::encoder_from_json(j, a);
  CHECK(back.assign() == enc.assign());
  CHECK_THROWS_AS(tc::encoder_from_json(tc::Json::parse(R"({"M": 2, "assign": {"a": 3, "b": 1, "c": 1}})"), a),
                  tc::InvalidArgument);
  CHECK_THROWS_AS(tc::encoder_from_json(tc::Json::parse(R"({"M": 2, "assign": {"a": 1, "b": 1}})"), a),
                  tc::InvalidArgument);
  CHECK(tc::to_json(tc::Partition(a, {{2}, {0, 1}}))["blocks"].dump() == R"([["c"],["a","b"]])");
}

TEST_CASE("cost json") {
  const auto c = tc::cost_from_json(tc::Json::parse(R"({"alphabet": ["a", "b"], "costs": [0, 1.5]})"));
  CHECK(c.max() == 1.5);
  CHECK_THROWS_AS(tc::load_json("/nonexistent/file.json"), tc::InvalidArgument);
}

}

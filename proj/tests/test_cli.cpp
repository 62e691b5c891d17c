#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(TASKCODE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (const auto n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "taskcode_cli_test";
  fs::create_directories(dir);
  std::ofstream(dir / "p.json") << R"({"alphabet": ["a", "b"], "probs": [0.25, 0.75]})";
  std::ofstream(dir / "bad.json") << R"({"alphabet": ["a", "b"], "probs": [0.25, 0.5]})";
  std::ofstream(dir / "broken.json") << R"({"alphabet": ["a", )";
  std::ofstream(dir / "c.json") << R"({"alphabet": ["a", "b"], "costs": [0, 1]})";
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("entropy and divergence") {
  const auto d = scratch();
  const auto r = run("entropy --pmf " + (d / "p.json").string() + " --rho 1");
  CHECK(r.code == 0);
  CHECK(r.out == "0.899969\n");
  CHECK(run("entropy --pmf " + (d / "p.json").string() + " --rho 0.1 --rho 10").out == "0.826364\n0.981226\n");
  CHECK(run("entropy --pmf " + (d / "bad.json").string()).code == 1);
  CHECK(run("entropy --normalize --pmf " + (d / "bad.json").string()).out == "0.958144\n");
  CHECK(run("entropy --pmf " + (d / "broken.json").string()).code == 1);
  CHECK(run("divergence --p " + (d / "p.json").string() + " --q " + (d / "p.json").string()).out == "0\n");
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("entropy --bogus").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("rd-curve csv") {
  const auto d = scratch();
  const auto csv = d / "rd.csv";
  CHECK(run("rd-curve --p 0.25 --rho 0.1 --rho 1 --rho 10 --dmax 0.5 --steps 100 --csv " + csv.string()).code == 0);
  const auto text = slurp(csv);
  CHECK(first_line(text) == "D,rho_0.1,rho_1,rho_10");
  CHECK(text.find("\n0,0.826364,0.899969,0.981226\n") != std::string::npos);
  CHECK(text.find("\n0.35,0,0,0") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 102);
}

TEST_CASE("sweeps are ordered and independent of the worker count") {
  const auto d = scratch();
  const std::string base = "sweep-rate --pmf " + (d / "p.json").string() + " --rho 1 --n 2..12 --rate 0.7 --rate 1";
  const auto one = run(base + " --jobs 1");
  const auto many = run(base + " --jobs 8");
  CHECK(one.out == many.out);
  CHECK(first_line(one.out) == "n,rate,descriptions,moment,lower_bound,universal_bound,status");
  CHECK(one.out.find("\n2,0.7,2,,,,infeasible\n") != std::string::npos);
  CHECK(one.code == 2);
  CHECK(run("sweep-rate --pmf " + (d / "p.json").string() + " --n 3..6 --rate 1").code == 0);
}

TEST_CASE("simulations") {
  const auto d = scratch();
  const auto p = (d / "p.json").string();
  const auto u = run("universal-sim --pmf " + p + " --n 10 --rate 1");
  CHECK(u.code == 0);
  CHECK(u.out == "n,rate,rho,descriptions,moment,bound,status\n10,1,1,1024,1,14638.8,ok\n");
  const auto l = run("lossy-sim --pmf " + p + " --n 10 --rate 0.7 --distortion 0.1");
  CHECK(first_line(l.out) == "n,rate,D,descriptions,used,moment,worst_distortion,status");
  CHECK(l.code == 0);
  const auto c = run("cost-sim --pmf " + p + " --costs " + (d / "c.json").string() + " --rate 1 --nmax 3");
  CHECK(c.out == "n,rate,cost_moment,converse_bound,expected_cost,status\n1,1,0.75,0.375,0.75,ok\n2,1,0.75,0.464015,0.75,ok\n"
                 "3,1,0.75,0.471944,0.75,ok\n");
}

TEST_CASE("encode round trip and oracle") {
  const auto d = scratch();
  const auto p = (d / "p.json").string(), enc = (d / "enc.json").string();
  const auto built = run("encode --pmf " + p + " -M 4 --out " + enc);
  CHECK(built.code == 0);
  const auto again = run("encode --pmf " + p + " -M 4 --evaluate " + enc);
  CHECK(first_line(again.out) == first_line(built.out));
  CHECK(run("encode --pmf " + p + " -M 2").code == 1);
  const auto o = run("oracle --pmf " + p + " -M 1");
  CHECK(o.out == "min_moment 2\nblocks 1\nargmin [[\"a\",\"b\"]]\n");
}

TEST_CASE("selftest is byte stable") {
  const auto a = run("selftest --seed 0");
  const auto b = run("selftest --seed 0");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("FAIL") == std::string::npos);
}

}

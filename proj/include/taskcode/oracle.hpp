#pragma once

#include "taskcode/partition.hpp"
#include "taskcode/prob.hpp"

#include <optional>
#include <vector>

namespace taskcode {

struct OracleResult {
  double min_moment;
  Partition argmin;
  std::size_t blocks_used;
};

// Exact min over all f: X -> {1..M} of E|f^{-1}(f(X))|^rho, by enumerating
// set partitions as restricted-growth strings. Ties (relative 1e-12) go to the
// lexicographically smallest string. |X| <= 12.
OracleResult exact_min_moment(const Pmf& p, double rho, std::size_t descriptions);

struct OracleSiResult {
  double min_moment;
  // Per-y optimum; empty where P_Y(y) = 0.
  std::vector<std::optional<OracleResult>> per_y;
};

// The side-information objective separates over y. |X| <= 10, |Y| <= 6.
OracleSiResult exact_min_moment_si(const JointPmf& joint, double rho, std::size_t descriptions);

}  // namespace taskcode

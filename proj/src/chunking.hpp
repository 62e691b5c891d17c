#pragma once

#include "taskcode/common.hpp"

#include <string>
#include <vector>

namespace taskcode::detail {

// Splitting classes of the given sizes into chunks of size at most
// ceil(|T| 2^{-n(R - s)}). `slack` is max_slack, or with `tighten` the
// smallest s in [0, max_slack] whose total chunk count fits in `budget`.
struct ChunkPlan {
  double slack = 0.0;
  std::vector<BigInt> caps;
  std::vector<std::size_t> chunks;
  std::size_t total = 0;
};

// Throws InfeasibleError (mentioning `what`) when even s = max_slack does not fit.
ChunkPlan plan_chunks(const std::vector<BigInt>& sizes, int n, double rate, double max_slack, std::size_t budget,
                      bool tighten, const std::string& what);

}  // namespace taskcode::detail

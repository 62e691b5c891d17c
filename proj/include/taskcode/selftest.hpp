#pragma once

#include <cstdint>
#include <ostream>

namespace taskcode {

// Runs a reduced-size version of every module's invariant checks and writes
// one line per check. Output depends only on the seed. Returns true when all pass.
bool run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace taskcode

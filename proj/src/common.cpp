#include "taskcode/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace taskcode {
namespace {

constexpr std::size_t kDefaultMaxTuples = std::size_t{1} << 20;

std::size_t initial_cap() {
  if (const char* env = std::getenv("TASKCODE_MAX_TUPLES")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxTuples;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{initial_cap()};
  return cap;
}

}  // namespace

std::size_t max_tuples() { return cap_storage().load(std::memory_order_relaxed); }

void set_max_tuples(std::size_t cap) {
  if (cap == 0) throw InvalidArgument("enumeration cap must be positive");
  cap_storage().store(cap, std::memory_order_relaxed);
}

void check_cap(long double count, const char* what) {
  if (!(count <= static_cast<long double>(max_tuples()))) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6Lg", count);
    throw CapExceeded(std::string(what) + ": " + buf +
                      " objects exceed the enumeration cap of " +
                      std::to_string(max_tuples()) + " (set TASKCODE_MAX_TUPLES to raise it)");
  }
}

std::size_t checked_pow(std::size_t base, int exponent, const char* what) {
  if (exponent < 0) throw InvalidArgument("negative exponent");
  check_cap(std::pow(static_cast<long double>(base), exponent), what);
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace taskcode

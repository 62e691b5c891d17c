#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace taskcode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input or violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A tuple/type/partition enumeration would exceed the configured cap.
class CapExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical trouble: non-convergence, infeasible construction parameters.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class ConvergenceError : public NumericFailure {
 public:
  ConvergenceError(const std::string& what, double best, double residual)
      : NumericFailure(what), best_(best), residual_(residual) {}
  double best() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

 private:
  double best_;
  double residual_;
};

// Upper limit on the number of objects (tuples, types, candidate codewords)
// any operation materializes. Defaults to 2^20; TASKCODE_MAX_TUPLES overrides
// it at first use, set_max_tuples() afterwards.
std::size_t max_tuples();
void set_max_tuples(std::size_t cap);

// Throws CapExceeded when count > max_tuples().
void check_cap(long double count, const char* what);

// Integer power with overflow detection against max_tuples().
std::size_t checked_pow(std::size_t base, int exponent, const char* what);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace taskcode

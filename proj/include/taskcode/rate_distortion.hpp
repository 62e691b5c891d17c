#pragma once

#include "taskcode/prob.hpp"

#include <cstdint>
#include <vector>

namespace taskcode {

// Single-letter distortion d(x, xhat). Every row attains zero.
class Distortion {
 public:
  Distortion(Alphabet x_alphabet, Alphabet xhat_alphabet, std::vector<std::vector<double>> d);

  static Distortion hamming(const Alphabet& alphabet);

  const Alphabet& x_alphabet() const noexcept { return x_; }
  const Alphabet& xhat_alphabet() const noexcept { return xhat_; }
  std::size_t x_size() const noexcept { return x_.size(); }
  std::size_t xhat_size() const noexcept { return xhat_.size(); }
  double operator()(std::size_t x, std::size_t xhat) const { return d_[x][xhat]; }

  // min_xhat E_Q d(X, xhat): beyond this level R(Q, D) = 0.
  double max_useful_level(const Pmf& q) const;

 private:
  Alphabet x_;
  Alphabet xhat_;
  std::vector<std::vector<double>> d_;
};

struct RdOptions {
  double tolerance = 1e-10;       // rate accuracy target, bits
  int max_iterations = 100000;    // Blahut-Arimoto sweeps per call
  // When false, an exhausted iteration budget returns the current estimate
  // (with its residual) instead of throwing.
  bool strict = true;
};

struct RdPoint {
  double rate;                      // R(Q, D), bits
  double slope;                     // s >= 0 with R'(D) = -s (+inf at D = 0)
  std::vector<double> output;       // optimal reproduction marginal r*
  std::vector<double> gradient;     // dR/dQ(x) up to an additive constant
  double residual = 0.0;            // final Blahut-Arimoto gap, bits
};

// Classical R(Q, D) by Blahut-Arimoto, matching D through the slope parameter.
// Returns exactly 0 when D >= max_useful_level(q). Throws ConvergenceError.
RdPoint rd_solve(const Pmf& q, const Distortion& dist, double level, const RdOptions& opts = {});
double rd_function(const Pmf& q, const Distortion& dist, double level, const RdOptions& opts = {});

struct RenyiRdOptions {
  int restarts = 20;
  int max_iterations = 2000;
  double tolerance = 1e-10;   // stop when an accepted step gains less than this
  std::uint64_t seed = 0;
  RdOptions inner{1e-10, 20000, false};
};

struct RenyiRdResult {
  double value;
  Pmf argmax;
  bool converged;
};

// R_rho(P, D) = max_Q R(Q, D) - D(Q||P)/rho via exponentiated-gradient ascent
// with random restarts. Throws ConvergenceError (carrying the best value)
// when no restart converges.
RenyiRdResult renyi_rd_solve(const Pmf& p, const Distortion& dist, double level, double rho,
                             const RenyiRdOptions& opts = {});
double renyi_rd(const Pmf& p, const Distortion& dist, double level, double rho,
                const RenyiRdOptions& opts = {});

// Closed form for a Bernoulli source (P(0) = p) under Hamming distortion.
double binary_hamming_renyi_rd(double p, double level, double rho);

}  // namespace taskcode

#pragma once

#include "taskcode/prob.hpp"

#include <limits>

namespace taskcode {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Moment order rho > 0 together with the Renyi order alpha = 1/(1+rho).
class OrderParam {
 public:
  static OrderParam from_rho(double rho);
  // alpha in (0,1); rho = (1-alpha)/alpha
  static OrderParam from_alpha(double alpha);

  double rho() const noexcept { return rho_; }
  double alpha() const noexcept { return alpha_; }

 private:
  OrderParam(double rho, double alpha) : rho_(rho), alpha_(alpha) {}
  double rho_;
  double alpha_;
};

// All entropies and divergences are in bits.

double shannon_entropy(const Pmf& p);
double kl_divergence(const Pmf& p, const Pmf& q);  // +inf when supp(p) not in supp(q)

// H_{1/(1+rho)}(P)
double renyi_entropy(const Pmf& p, double rho);

// Arimoto's H_{1/(1+rho)}(X|Y)
double conditional_renyi(const JointPmf& joint, double rho);

// Sundaresan's Delta_alpha(P||Q); alpha > 0, alpha != 1. May return +inf.
double sundaresan_divergence(const Pmf& p, const Pmf& q, double alpha);

// Renyi's D_alpha(P||Q); alpha > 0, alpha != 1. May return +inf.
double renyi_divergence(const Pmf& p, const Pmf& q, double alpha);

// Closed-form limits of Delta_alpha as alpha -> 0 and alpha -> inf.
double sundaresan_limit_zero(const Pmf& p, const Pmf& q);
double sundaresan_limit_infinity(const Pmf& p, const Pmf& q);

// H(Q) - D(Q||P)/rho
double tilted_objective(const Pmf& q, const Pmf& p, double rho);
// H(V|Q) - D(Q o V || P_XY)/rho for the joint J = Q o V (rows x, columns y).
double conditional_tilted_objective(const JointPmf& q_v, const JointPmf& p, double rho);

// Q*(x) proportional to P(x)^{1/(1+rho)}
Pmf tilted_pmf(const Pmf& p, double rho);

struct VariationalResult {
  double value;
  Pmf argmax;
  int iterations;
};

// max_Q H(Q) - D(Q||P)/rho by exponentiated-gradient ascent on the simplex.
VariationalResult variational_entropy(const Pmf& p, double rho);

struct ConditionalVariationalResult {
  double value;
  Pmf q_star;         // over Y
  Channel v_star;     // from Y to X
  int iterations;
};

// max_{Q,V} H(V|Q) - D(Q o V||P_XY)/rho, ascended numerically over the joint
// simplex. The returned maximizers are the closed forms (Q* tilted by the
// inner power sum, V* the per-y tilt of P_{X|Y}); `value` comes from the ascent.
ConditionalVariationalResult variational_conditional(const JointPmf& joint, double rho);

// Closed-form maximizers only (no ascent).
struct ConditionalMaximizers {
  Pmf q_star;
  Channel v_star;
};
ConditionalMaximizers conditional_maximizers(const JointPmf& joint, double rho);

// Binary entropy and its inverse on [0, 1/2] (bisection to 1e-12).
double binary_entropy(double x);
double inverse_binary_entropy(double h);

}  // namespace taskcode

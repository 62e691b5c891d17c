#pragma once

#include "taskcode/prob.hpp"
#include "taskcode/task_encoder.hpp"

#include <vector>

namespace taskcode {

// Empirical type of an n-tuple: per-symbol counts summing to n.
struct TypeDescriptor {
  std::vector<std::size_t> counts;

  std::size_t n() const;
  // |T_Q| = n! / prod counts!
  BigInt class_size() const;
  bool operator==(const TypeDescriptor&) const = default;
};

// All compositions of n into k parts, lexicographic in the count vector.
std::vector<TypeDescriptor> enumerate_types(int n, std::size_t alphabet_size);

BigInt multinomial(std::span<const std::size_t> counts);

// Lexicographic rank of a sequence (symbol indices) within its type class, and back.
BigInt type_rank(std::span<const std::size_t> sequence, std::size_t alphabet_size);
std::vector<std::size_t> type_unrank(const TypeDescriptor& type, const BigInt& rank);

// How much of the construction slack delta'_n the chunk cap uses.
enum class SlackPolicy {
  tightest,  // smallest s in [0, delta'_n] whose chunks still fit in floor(2^{nR})
  full,      // s = delta'_n exactly
};

struct BlockCodeParams {
  int n;
  double rate;  // bits per task
  SlackPolicy slack = SlackPolicy::tightest;
  // floor(2^{nR}), saturated far above any enumerable size
  std::size_t descriptions() const;
};

// Type class split into `chunks` contiguous rank ranges of near-equal size.
struct ClassChunks {
  TypeDescriptor type;
  BigInt class_size;
  BigInt cap;               // ceil(|T| 2^{-n(R - s)})
  std::size_t chunks;       // ceil(|T| / cap)
  std::size_t first_index;  // description of the first chunk

  // Size of chunk j and the chunk holding rank r.
  BigInt chunk_size(std::size_t j) const;
  std::size_t chunk_of(const BigInt& rank) const;
};

// Universal encoder for n-tuples over an alphabet, kept per type class so it
// can be queried and evaluated without materializing X^n. Each class T_Q is
// cut into rank-order chunks of size at most ceil(|T_Q| 2^{-n(R-s)}), with
// s <= delta'_n chosen by the slack policy.
class UniversalCode {
 public:
  UniversalCode(BlockCodeParams params, Alphabet alphabet);

  const BlockCodeParams& params() const noexcept { return params_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t descriptions() const noexcept { return m_; }
  std::size_t used_descriptions() const noexcept { return used_; }
  // Slack s actually used for the chunk cap ceil(|T| 2^{-n(R-s)}); never above delta'_n.
  double slack() const noexcept { return slack_; }
  const std::vector<ClassChunks>& classes() const noexcept { return classes_; }

  std::size_t describe(std::span<const std::size_t> sequence) const;
  // E|f^{-1}(f(X^n))|^rho under P^n, summed per type class.
  double moment(const Pmf& p, double rho) const;
  // The encoder over the n-tuple alphabet (cap-checked).
  TaskEncoder materialize() const;

 private:
  BlockCodeParams params_;
  Alphabet alphabet_;
  std::size_t m_;
  std::size_t used_ = 0;
  double slack_ = 0.0;
  std::vector<ClassChunks> classes_;
};

// delta'_n = |X| log(n+1) / n, the construction slack.
double universal_slack(int n, std::size_t alphabet_size);
// delta_n = (1 + (1 + 1/rho)|X| log(n+1)) / n
double universal_penalty(int n, std::size_t alphabet_size, double rho);
// 1 + 2^{-n rho (R - H_{1/(1+rho)}(P) - delta_n)}
double universal_moment_bound(int n, double rate, double rho, const Pmf& p);

// 2^{rho(n H_{1/(1+rho)}(P) - log floor(2^{nR}))}: no encoder of X^n into
// floor(2^{nR}) descriptions does better under P^n.
double block_moment_lower_bound(int n, double rate, double rho, const Pmf& p);

TaskEncoder build_universal_encoder(const BlockCodeParams& params, const Alphabet& alphabet);

// Side information: for each y^n, X^n is split into V-shells (joint types
// with y^n), each shell chunked with slack |X||Y| log(n+1) / n.
SiTaskEncoder build_universal_si_encoder(const BlockCodeParams& params, const Alphabet& x_alphabet,
                                         const Alphabet& y_alphabet);
// delta_n = (1 + (1 + 1/rho)|X||Y| log(n+1) + |X| log(n+1)/rho) / n
double universal_si_penalty(int n, std::size_t x_size, std::size_t y_size, double rho);
double universal_si_moment_bound(int n, double rate, double rho, const JointPmf& joint);

}  // namespace taskcode

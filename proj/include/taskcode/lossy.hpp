#pragma once

#include "taskcode/rate_distortion.hpp"
#include "taskcode/universal.hpp"

#include <vector>

namespace taskcode {

// Encoder f: X^n -> descriptions and decoder sets phi(m) of reproduction
// n-tuples. Every source tuple has a codeword within distortion D in
// phi(f(x^n)), and the phi sets are pairwise disjoint.
struct LossyCodec {
  int n;
  std::size_t descriptions;              // floor(2^{nR})
  Alphabet source;                       // X^n
  Alphabet reproduction;                 // Xhat^n
  std::vector<std::size_t> f;            // per source tuple, index into phi
  std::vector<std::vector<std::size_t>> phi;  // nonempty decoder sets (reproduction tuple indices)
  double slack;                          // chunking slack actually used (<= |X| log(n+1)/n)
};

// Sum of per-letter distortions between two tuples (indices into X^n and Xhat^n).
double tuple_distortion(const Distortion& dist, const Alphabet& source, std::size_t x,
                        const Alphabet& reproduction, std::size_t xhat);

// Greedy max-coverage cover of T_Q by reproduction n-tuples within average
// distortion D (ties to the smallest codeword index), in selection order.
std::vector<std::size_t> greedy_type_cover(const TypeDescriptor& type, const Distortion& dist, double level);

// Per type: greedy cover B_Q, sorted and split into rank-order chunks;
// chunks shared across types are then made disjoint. Throws InfeasibleError
// when the chunks do not fit in floor(2^{nR}).
LossyCodec build_lossy_codec(int n, double rate, const Distortion& dist, double level);

// E |phi(f(X^n))|^rho under P^n.
double lossy_moment(const LossyCodec& codec, const Pmf& p, double rho);

// Largest over source tuples of min over phi(f(x^n)) of the average distortion.
double codec_worst_distortion(const LossyCodec& codec, const Distortion& dist);

}  // namespace taskcode

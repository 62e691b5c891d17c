#pragma once

#include "taskcode/prob.hpp"

#include <cstdint>
#include <random>

namespace taskcode {

// Portable draws from mt19937_64 (the standard distributions are not
// reproducible across library implementations).
using Rng = std::mt19937_64;

// Uniform on [0, 1).
double uniform01(Rng& rng);
// Uniform on {0, ..., k-1}.
std::size_t uniform_index(Rng& rng, std::size_t k);

// Flat Dirichlet draw over the alphabet; each symbol is zeroed independently
// with probability zero_fraction (at least one symbol keeps mass).
Pmf random_pmf(Rng& rng, const Alphabet& alphabet, double zero_fraction = 0.0);
JointPmf random_joint(Rng& rng, const Alphabet& x, const Alphabet& y, double zero_fraction = 0.0);

}  // namespace taskcode

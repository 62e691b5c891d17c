#pragma once

#include "taskcode/prob.hpp"
#include "taskcode/sampling.hpp"

#include <doctest.h>

#include <initializer_list>
#include <vector>

namespace tc = taskcode;
using doctest::Approx;

inline tc::Pmf pmf(std::initializer_list<double> w) {
  const std::vector<double> v(w);
  return tc::make_pmf(tc::Alphabet::range(v.size()), v);
}

inline tc::JointPmf joint(std::vector<std::vector<double>> rows) {
  const auto nx = rows.size(), ny = rows.front().size();
  return tc::JointPmf(tc::Alphabet::range(nx), tc::Alphabet::range(ny), std::move(rows), 1e-9);
}

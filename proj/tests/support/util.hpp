#pragma once

#include <random>

#include "spinwork/linalg.hpp"

namespace testutil {

using spinwork::CMat;
using spinwork::CVec;
using spinwork::Vec;

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline Vec random_vec(std::mt19937_64& g, int n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = d(g);
  return v;
}

inline CVec random_cvec(std::mt19937_64& g, int n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = spinwork::cplx(d(g), d(g));
  return v;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace testutil

#pragma once

#include <functional>

#include "spinwork/linalg.hpp"

namespace spinwork {

// Central finite differences with one Richardson extrapolation pass:
// D(h) has error O(h^2); (4 D(h/2) - D(h)) / 3 is O(h^4).

// First-tier step (first derivatives of closed-form data).
inline constexpr double kFdStep1 = 1e-5;
// Second-tier step (derivatives of quantities that are themselves FD results).
inline constexpr double kFdStep2 = 1e-4;

template <typename F>
auto fd_partial(const F& f, const Vec& x, int a, double h) -> decltype(f(x)) {
  Vec xp = x, xm = x;
  auto central = [&](double step) {
    xp(a) = x(a) + step;
    xm(a) = x(a) - step;
    return ((f(xp) - f(xm)) / (2.0 * step)).eval();
  };
  auto d1 = central(h);
  auto d2 = central(h / 2.0);
  return ((4.0 * d2 - d1) / 3.0).eval();
}

// Scalar-valued variant.
template <typename F>
double fd_partial_scalar(const F& f, const Vec& x, int a, double h) {
  Vec xp = x, xm = x;
  auto central = [&](double step) {
    xp(a) = x(a) + step;
    xm(a) = x(a) - step;
    return (f(xp) - f(xm)) / (2.0 * step);
  };
  double d1 = central(h);
  double d2 = central(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace spinwork

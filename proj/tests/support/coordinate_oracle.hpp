#pragma once

// Independent curvature computation: coordinate Christoffel symbols from
// finite differences of the metric, then the coordinate Riemann tensor, then
// conversion to frame components.  Shares no code path with the library's
// Koszul/structure-constant pipeline, so agreement is a genuine cross-check.

#include "spinwork/frame_geometry.hpp"
#include "spinwork/numdiff.hpp"

namespace testutil {

using spinwork::ChartFrame;
using spinwork::Mat;
using spinwork::Tensor3;
using spinwork::Tensor4;
using spinwork::Vec;

// Lambda(b,a,c) = (1/2) g^{bd} (d_a g_{dc} + d_c g_{da} - d_d g_{ac})
inline Tensor3 coord_christoffel(const ChartFrame& ch, const Vec& x, double h) {
  const int n = ch.dim;
  std::vector<Mat> dg(n);
  for (int a = 0; a < n; ++a)
    dg[a] = spinwork::fd_partial([&](const Vec& y) { return ch.metric(y); }, x, a, h);
  Mat ginv = ch.metric(x).inverse();
  Tensor3 lam(n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int d = 0; d < n; ++d)
          s += 0.5 * ginv(b, d) * (dg[a](d, c) + dg[c](d, a) - dg[d](a, c));
        lam(b, a, c) = s;
      }
  return lam;
}

// Frame components R(i,j,k,l) = -g(R(E_i,E_j)E_k, E_l) computed from the
// coordinate Christoffel symbols.
inline Tensor4 coord_riemann_frame(const ChartFrame& ch, const Vec& x) {
  const int n = ch.dim;
  const double h1 = 1e-5, h2 = 1e-4;
  Tensor3 lam = coord_christoffel(ch, x, h1);
  // d_a Lambda(d,b,c), flattened
  auto lam_flat = [&](const Vec& y) {
    Tensor3 L = coord_christoffel(ch, y, h1);
    Vec v(n * n * n);
    int p = 0;
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) v(p++) = L(d, b, c);
    return v;
  };
  std::vector<Vec> dlam(n);
  for (int a = 0; a < n; ++a) dlam[a] = spinwork::fd_partial(lam_flat, x, a, h2);
  auto dl = [&](int a, int d, int b, int c) { return dlam[a]((d * n + b) * n + c); };
  // R(d; a,b,c): coefficient of coordinate vector d in R(d_a, d_b) d_c
  Tensor4 rop(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = dl(a, d, b, c) - dl(b, d, a, c);
          for (int e = 0; e < n; ++e)
            s += lam(e, b, c) * lam(d, a, e) - lam(e, a, c) * lam(d, b, e);
          rop(d, a, b, c) = s;
        }
  Mat F = ch.frame(x);
  Mat G = ch.metric(x);
  Tensor4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                  for (int e = 0; e < n; ++e)
                    s += F(a, i) * F(b, j) * F(c, k) * rop(d, a, b, c) * G(d, e) * F(e, l);
          R(i, j, k, l) = -s;
        }
  return R;
}

}  // namespace testutil

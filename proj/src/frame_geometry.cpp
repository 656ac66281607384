#include "spinwork/frame_geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace spinwork {

namespace {

Tensor3 koszul(const Tensor3& c) {
  const int n = c.dim();
  Tensor3 g(n);
  // nabla_{E_u} E_v = sum_w g(w,u,v) E_w with
  // g(w,u,v) = (c(w,u,v) - c(u,v,w) + c(v,w,u)) / 2 for an orthonormal frame.
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        g(w, u, v) = 0.5 * (c(w, u, v) - c(u, v, w) + c(v, w, u));
  return g;
}

bool has_closed_partials(const FrameModel& m) {
  return m.chart && m.chart->frame_partials != nullptr;
}

Tensor3 chart_partials(const ChartFrame& ch, const Vec& x, bool use_fd, double h) {
  const int n = ch.dim;
  if (!use_fd && ch.frame_partials) return ch.frame_partials(x);
  Tensor3 dF(n);
  for (int a = 0; a < n; ++a) {
    Mat D = fd_partial([&](const Vec& y) { return ch.frame(y); }, x, a, h);
    for (int b = 0; b < n; ++b)
      for (int u = 0; u < n; ++u) dF(a, b, u) = D(b, u);
  }
  return dF;
}

Tensor3 chart_commutators(const ChartFrame& ch, const Vec& x, bool use_fd, double h) {
  const int n = ch.dim;
  Mat F = ch.frame(x);
  Tensor3 dF = chart_partials(ch, x, use_fd, h);
  Mat Finv = F.inverse();
  Tensor3 c(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      Vec br = Vec::Zero(n);
      for (int b = 0; b < n; ++b) {
        double s = 0;
        for (int a = 0; a < n; ++a)
          s += F(a, u) * dF(a, b, v) - F(a, v) * dF(a, b, u);
        br(b) = s;
      }
      Vec cf = Finv * br;
      for (int w = 0; w < n; ++w) {
        c(w, u, v) = cf(w);
        c(w, v, u) = -cf(w);
      }
    }
  return c;
}

std::vector<int> factor_offsets(const FrameModel& m) {
  std::vector<int> off{0};
  for (const auto& f : m.factors) off.push_back(off.back() + f.dim);
  return off;
}

Vec slice(const Vec& x, int off, int d) { return x.segment(off, d); }

// Curvature of a constant-bracket model: all frame derivatives of gamma vanish.
CurvatureData sc_curvature(const StructureConstants& sc, const Vec& x) {
  const int n = sc.dim;
  Tensor3 c = sc.c;
  Tensor3 g = koszul(c);
  CurvatureData out;
  out.point = x;
  out.R = Tensor4(n);
  out.ric = Mat::Zero(n, n);
  out.ric_cov = Tensor3(n);
  out.grad_s = Vec::Zero(n);
  out.hess_s = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double r = 0;  // coefficient of E_l in R(E_i,E_j)E_k
          for (int mm = 0; mm < n; ++mm)
            r += g(mm, j, k) * g(l, i, mm) - g(mm, i, k) * g(l, j, mm);
          for (int w = 0; w < n; ++w) r -= c(w, i, j) * g(l, w, k);
          out.R(i, j, k, l) = -r;
        }
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0;
      for (int u = 0; u < n; ++u) s += out.R(u, j, u, l);
      out.ric(j, l) = s;
    }
  out.scal = out.ric.trace();
  out.ric_norm2 = out.ric.squaredNorm();
  out.trace_ric3 = (out.ric * out.ric * out.ric).trace();
  // Ricci has constant frame components here, so nabla Ric is pure
  // connection: (nabla_k ric)(i,j) = -Gamma^u_{ki} ric(u,j) - Gamma^u_{kj} ric(i,u).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int u = 0; u < n; ++u)
          s -= g(u, k, i) * out.ric(u, j) + g(u, k, j) * out.ric(i, u);
        out.ric_cov(i, j, k) = s;
      }
  return out;
}

struct ChartPipeline {
  const ChartFrame* ch;
  bool use_fd;
  double h_frame;   // step for frame partials (fd path)
  double h_gamma;   // step for derivatives of gamma
  double h_second;  // step for derivatives of fd-derived scalars

  Tensor3 comm(const Vec& y) const { return chart_commutators(*ch, y, use_fd, h_frame); }
  Tensor3 gamma(const Vec& y) const { return koszul(comm(y)); }

  Tensor4 riemann(const Vec& y) const {
    const int n = ch->dim;
    Tensor3 c = comm(y);
    Tensor3 g = koszul(c);
    Mat F = ch->frame(y);
    // coordinate partials of gamma, flattened
    auto gamma_flat = [&](const Vec& z) {
      Tensor3 gg = gamma(z);
      Vec v(n * n * n);
      int p = 0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) v(p++) = gg(i, k, j);
      return v;
    };
    std::vector<Vec> dg(n);
    for (int a = 0; a < n; ++a) dg[a] = fd_partial(gamma_flat, y, a, h_gamma);
    auto egamma = [&](int dir, int i, int k, int j) {
      double s = 0;
      int pos = (i * n + k) * n + j;
      for (int a = 0; a < n; ++a) s += F(a, dir) * dg[a](pos);
      return s;
    };
    Tensor4 R(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double r = egamma(i, l, j, k) - egamma(j, l, i, k);
            for (int mm = 0; mm < n; ++mm)
              r += g(mm, j, k) * g(l, i, mm) - g(mm, i, k) * g(l, j, mm);
            for (int w = 0; w < n; ++w) r -= c(w, i, j) * g(l, w, k);
            R(i, j, k, l) = -r;
          }
    return R;
  }

  Mat ricci(const Vec& y) const {
    const int n = ch->dim;
    Tensor4 R = riemann(y);
    Mat ric(n, n);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int u = 0; u < n; ++u) s += R(u, j, u, l);
        ric(j, l) = s;
      }
    return ric;
  }

  double scal(const Vec& y) const {
    if (ch->scal_closed) return ch->scal_closed(y);
    return ricci(y).trace();
  }

  Vec grad_scal(const Vec& y) const {
    const int n = ch->dim;
    Mat F = ch->frame(y);
    double h = ch->scal_closed ? kFdStep1 : h_second;
    Vec ds(n);
    for (int a = 0; a < n; ++a)
      ds(a) = fd_partial_scalar([&](const Vec& z) { return scal(z); }, y, a, h);
    return F.transpose() * ds;
  }
};

CurvatureData chart_curvature(const FrameModel& m, const Vec& x, bool use_fd, double h) {
  const ChartFrame& ch = *m.chart;
  const int n = ch.dim;
  ChartPipeline pl{&ch, use_fd, h, use_fd ? kFdStep2 : h, 10 * kFdStep2};
  CurvatureData out;
  out.point = x;
  out.R = pl.riemann(x);
  out.ric = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0;
      for (int u = 0; u < n; ++u) s += out.R(u, j, u, l);
      out.ric(j, l) = s;
    }
  out.scal = out.ric.trace();
  out.ric_norm2 = out.ric.squaredNorm();
  out.trace_ric3 = (out.ric * out.ric * out.ric).trace();

  Tensor3 g = pl.gamma(x);
  Mat F = ch.frame(x);

  // covariant derivative of the Ricci tensor
  auto ric_flat = [&](const Vec& z) {
    Mat r = pl.ricci(z);
    Vec v(n * n);
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v(p++) = r(i, j);
    return v;
  };
  std::vector<Vec> dric(n);
  for (int a = 0; a < n; ++a) dric[a] = fd_partial(ric_flat, x, a, pl.h_second);
  out.ric_cov = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int a = 0; a < n; ++a) s += F(a, k) * dric[a](i * n + j);
        for (int l = 0; l < n; ++l)
          s -= g(l, k, i) * out.ric(l, j) + g(l, k, j) * out.ric(i, l);
        out.ric_cov(i, j, k) = s;
      }

  out.grad_s = pl.grad_scal(x);
  // Hess S(E_i, E_j) = E_i(E_j S) - (nabla_{E_i} E_j) S
  auto gs_flat = [&](const Vec& z) { return pl.grad_scal(z); };
  double hh = ch.scal_closed ? kFdStep2 : pl.h_second;
  std::vector<Vec> dgs(n);
  for (int a = 0; a < n; ++a) dgs[a] = fd_partial(gs_flat, x, a, hh);
  out.hess_s = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int a = 0; a < n; ++a) s += F(a, i) * dgs[a](j);
      for (int k = 0; k < n; ++k) s -= g(k, i, j) * out.grad_s(k);
      out.hess_s(i, j) = s;
    }
  out.lap_s = -out.hess_s.trace();
  return out;
}

FrameModel euclidean_space(int dim, const std::string& name) {
  FrameModel m;
  m.name = name;
  m.dim = dim;
  StructureConstants sc;
  sc.dim = dim;
  sc.c = Tensor3(dim);
  m.sc = sc;
  ChartFrame ch;
  ch.dim = dim;
  ch.frame = [dim](const Vec&) { return Mat::Identity(dim, dim); };
  ch.metric = [dim](const Vec&) { return Mat::Identity(dim, dim); };
  ch.frame_partials = [dim](const Vec&) { return Tensor3(dim); };
  ch.scal_closed = [](const Vec&) { return 0.0; };
  ch.lo = Vec::Constant(dim, -1.0);
  ch.hi = Vec::Constant(dim, 1.0);
  m.chart = ch;
  m.homogeneous = true;
  m.conformally_flat = true;
  m.einstein = true;
  m.parallel_one_form = true;
  return m;
}

// Constant-curvature space in the conformal chart g = u^{-2} delta,
// u = 1 + kappa |x|^2 / 4; sectional curvature kappa.
FrameModel space_form_chart(int k, double kappa, double box, const std::string& name) {
  FrameModel m;
  m.name = name;
  m.dim = k;
  ChartFrame ch;
  ch.dim = k;
  auto ufun = [kappa](const Vec& x) { return 1.0 + 0.25 * kappa * x.squaredNorm(); };
  ch.frame = [k, ufun](const Vec& x) -> Mat {
    return ufun(x) * Mat::Identity(k, k);
  };
  ch.metric = [k, ufun](const Vec& x) -> Mat {
    double u = ufun(x);
    return Mat::Identity(k, k) / (u * u);
  };
  ch.frame_partials = [k, kappa](const Vec& x) {
    Tensor3 d(k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) d(a, b, b) = 0.5 * kappa * x(a);
    return d;
  };
  double s = kappa * k * (k - 1);
  ch.scal_closed = [s](const Vec&) { return s; };
  ch.lo = Vec::Constant(k, -box);
  ch.hi = Vec::Constant(k, box);
  m.chart = ch;
  m.homogeneous = true;
  m.conformally_flat = true;
  m.einstein = true;
  m.compact = kappa > 0;
  m.params["kappa"] = kappa;
  return m;
}

FrameModel sc_model(const std::string& name, int dim,
                    const std::vector<std::tuple<int, int, int, double>>& brackets) {
  FrameModel m;
  m.name = name;
  m.dim = dim;
  StructureConstants sc;
  sc.dim = dim;
  sc.c = Tensor3(dim);
  for (auto [w, u, v, val] : brackets) {
    sc.c(w, u, v) = val;
    sc.c(w, v, u) = -val;
  }
  m.sc = sc;
  m.homogeneous = true;
  return m;
}

}  // namespace

double StructureConstants::jacobi_residual() const {
  const int n = dim;
  double worst = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        for (int z = 0; z < n; ++z) {
          double s = 0;
          for (int r = 0; r < n; ++r)
            s += c(r, v, w) * c(z, u, r) + c(r, w, u) * c(z, v, r) +
                 c(r, u, v) * c(z, w, r);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

Tensor3 structure_constants_at(const FrameModel& m, const Vec& x, GeomPath path, double h) {
  if (m.is_product()) {
    Tensor3 c(m.dim);
    auto off = factor_offsets(m);
    for (size_t f = 0; f < m.factors.size(); ++f) {
      Tensor3 cf = structure_constants_at(m.factors[f], slice(x, off[f], m.factors[f].dim), path, h);
      for (int a = 0; a < cf.dim(); ++a)
        for (int b = 0; b < cf.dim(); ++b)
          for (int d = 0; d < cf.dim(); ++d)
            c(off[f] + a, off[f] + b, off[f] + d) = cf(a, b, d);
    }
    return c;
  }
  if (path != GeomPath::ChartFd && m.sc) return m.sc->c;
  if (path == GeomPath::Exact) {
    if (!has_closed_partials(m))
      throw std::invalid_argument("structure_constants_at: no exact data for " + m.name);
    return chart_commutators(*m.chart, x, false, h);
  }
  if (!m.chart) {
    if (m.sc) {
      FrameModel tmp = m;
      ensure_chart(tmp);
      return chart_commutators(*tmp.chart, x, true, h);
    }
    throw std::invalid_argument("structure_constants_at: model has no chart: " + m.name);
  }
  bool use_fd = (path == GeomPath::ChartFd) || !m.chart->frame_partials;
  return chart_commutators(*m.chart, x, use_fd, h);
}

ConnectionData christoffel(const FrameModel& m, const Vec& x, GeomPath path, double h) {
  ConnectionData out;
  out.point = x;
  out.gamma = koszul(structure_constants_at(m, x, path, h));
  return out;
}

CurvatureData curvature(const FrameModel& m, const Vec& x, GeomPath path, double h) {
  if (m.is_product()) {
    auto off = factor_offsets(m);
    CurvatureData out;
    out.point = x;
    const int n = m.dim;
    out.R = Tensor4(n);
    out.ric = Mat::Zero(n, n);
    out.ric_cov = Tensor3(n);
    out.grad_s = Vec::Zero(n);
    out.hess_s = Mat::Zero(n, n);
    for (size_t f = 0; f < m.factors.size(); ++f) {
      const int d = m.factors[f].dim;
      const int o = off[f];
      CurvatureData part = curvature(m.factors[f], slice(x, o, d), path, h);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          out.ric(o + i, o + j) = part.ric(i, j);
          out.hess_s(o + i, o + j) = part.hess_s(i, j);
          for (int k = 0; k < d; ++k) {
            out.ric_cov(o + i, o + j, o + k) = part.ric_cov(i, j, k);
            for (int l = 0; l < d; ++l)
              out.R(o + i, o + j, o + k, o + l) = part.R(i, j, k, l);
          }
        }
      out.grad_s.segment(o, d) = part.grad_s;
      out.scal += part.scal;
      out.ric_norm2 += part.ric_norm2;
      out.trace_ric3 += part.trace_ric3;
      out.lap_s += part.lap_s;
      out.has_derivatives = out.has_derivatives && part.has_derivatives;
    }
    return out;
  }
  if (path != GeomPath::ChartFd && m.sc) return sc_curvature(*m.sc, x);
  if (!m.chart) {
    if (m.sc) {
      FrameModel tmp = m;
      ensure_chart(tmp);
      return chart_curvature(tmp, x, true, h);
    }
    throw std::invalid_argument("curvature: model has no chart: " + m.name);
  }
  bool use_fd = (path == GeomPath::ChartFd) || !m.chart->frame_partials;
  if (path == GeomPath::Exact && use_fd)
    throw std::invalid_argument("curvature: no exact data for " + m.name);
  return chart_curvature(m, x, use_fd, h);
}

double orthonormality_residual(const FrameModel& m, const Vec& x) {
  if (m.is_product()) {
    auto off = factor_offsets(m);
    double worst = 0;
    for (size_t f = 0; f < m.factors.size(); ++f)
      worst = std::max(worst, orthonormality_residual(
                                  m.factors[f], slice(x, off[f], m.factors[f].dim)));
    return worst;
  }
  FrameModel tmp = m;
  if (!tmp.chart) ensure_chart(tmp);
  Mat F = tmp.chart->frame(x);
  Mat G = tmp.chart->metric(x);
  return (F.transpose() * G * F - Mat::Identity(m.dim, m.dim)).cwiseAbs().maxCoeff();
}

FrameModel conformal_rescale(const FrameModel& m, const ConformalFactor& f,
                             const std::string& name) {
  FrameModel base = m;
  if (!base.chart) ensure_chart(base);
  const ChartFrame bc = *base.chart;
  const int n = m.dim;
  FrameModel out;
  out.name = name;
  out.dim = n;
  ChartFrame ch;
  ch.dim = n;
  ch.frame = [bc, f](const Vec& x) -> Mat {
    return std::pow(f.w(x), -0.5) * bc.frame(x);
  };
  ch.metric = [bc, f](const Vec& x) -> Mat { return f.w(x) * bc.metric(x); };
  if (bc.frame_partials && f.grad_w) {
    ch.frame_partials = [bc, f, n](const Vec& x) {
      double w = f.w(x);
      Vec gw = f.grad_w(x);
      double s = std::pow(w, -0.5);
      double sp = -0.5 * std::pow(w, -1.5);
      Mat F = bc.frame(x);
      Tensor3 dF = bc.frame_partials(x);
      Tensor3 out3(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int u = 0; u < n; ++u)
            out3(a, b, u) = sp * gw(a) * F(b, u) + s * dF(a, b, u);
      return out3;
    };
  }
  ch.lo = bc.lo;
  ch.hi = bc.hi;
  out.chart = ch;
  out.compact = m.compact;
  out.conformally_flat = m.conformally_flat;
  return out;
}

FrameModel deformed_model(const FrameModel& base, double a2, const std::string& name) {
  if (!base.sc || base.sasaki_xi < 0)
    throw std::invalid_argument("deformed_model: needs adapted constant brackets");
  double a = std::sqrt(a2);
  const int n = base.dim;
  const int xi = base.sasaki_xi;
  FrameModel out = base;
  out.name = name;
  out.chart.reset();
  out.einstein = false;
  out.conformally_flat = false;  // metric deformation breaks the base's flat conformal class
  out.params["a2"] = a2;
  StructureConstants sc;
  sc.dim = n;
  sc.c = Tensor3(n);
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        bool uv_xi = (u == xi || v == xi);
        double f;
        if (uv_xi && w == xi) f = a;
        else if (uv_xi) f = a2;
        else if (w == xi) f = 1.0;
        else f = a;
        sc.c(w, u, v) = f * base.sc->c(w, u, v);
      }
  out.sc = sc;
  return out;
}

FrameModel product_model(const FrameModel& a, const FrameModel& b, const std::string& name) {
  FrameModel m;
  m.name = name.empty() ? a.name + "_x_" + b.name : name;
  m.dim = a.dim + b.dim;
  m.factors = {a, b};
  m.compact = a.compact && b.compact;
  m.homogeneous = a.homogeneous && b.homogeneous;
  return m;
}

void ensure_chart(FrameModel& m) {
  if (m.chart) return;
  if (m.is_product()) {
    for (auto& f : m.factors) ensure_chart(f);
    const int n = m.dim;
    auto off = factor_offsets(m);
    auto factors = m.factors;  // copies captured by the chart closures
    ChartFrame ch;
    ch.dim = n;
    ch.frame = [factors, off, n](const Vec& x) {
      Mat F = Mat::Zero(n, n);
      for (size_t f = 0; f < factors.size(); ++f) {
        int d = factors[f].dim, o = off[f];
        F.block(o, o, d, d) = factors[f].chart->frame(x.segment(o, d));
      }
      return F;
    };
    ch.metric = [factors, off, n](const Vec& x) {
      Mat G = Mat::Zero(n, n);
      for (size_t f = 0; f < factors.size(); ++f) {
        int d = factors[f].dim, o = off[f];
        G.block(o, o, d, d) = factors[f].chart->metric(x.segment(o, d));
      }
      return G;
    };
    bool all_partials = true;
    for (const auto& f : factors) all_partials = all_partials && f.chart->frame_partials != nullptr;
    if (all_partials) {
      ch.frame_partials = [factors, off, n](const Vec& x) {
        Tensor3 d3(n);
        for (size_t f = 0; f < factors.size(); ++f) {
          int d = factors[f].dim, o = off[f];
          Tensor3 p = factors[f].chart->frame_partials(x.segment(o, d));
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
              for (int u = 0; u < d; ++u) d3(o + a, o + b, o + u) = p(a, b, u);
        }
        return d3;
      };
    }
    ch.lo = Vec(n);
    ch.hi = Vec(n);
    for (size_t f = 0; f < factors.size(); ++f) {
      ch.lo.segment(off[f], factors[f].dim) = factors[f].chart->lo;
      ch.hi.segment(off[f], factors[f].dim) = factors[f].chart->hi;
    }
    m.chart = ch;
    return;
  }
  if (!m.sc) throw std::invalid_argument("ensure_chart: no structure data: " + m.name);
  const int n = m.dim;
  Tensor3 c = m.sc->c;
  // Left-invariant frame in exponential coordinates: the frame matrix is
  // B(ad_x)^{-1} with B(z) = (1 - exp(-z))/z, so the coordinate metric is
  // B^T B and the frame is orthonormal by construction.
  auto bseries = [c, n](const Vec& x) {
    Mat ad = Mat::Zero(n, n);
    for (int w = 0; w < n; ++w)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int u = 0; u < n; ++u) s += x(u) * c(w, u, k);
        ad(w, k) = s;
      }
    Mat term = Mat::Identity(n, n);
    Mat B = term;
    for (int j = 1; j <= 40; ++j) {
      term = (term * (-ad)) / (j + 1.0);
      B += term;
      if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    return B;
  };
  ChartFrame ch;
  ch.dim = n;
  ch.frame = [bseries](const Vec& x) { return bseries(x).inverse().eval(); };
  ch.metric = [bseries](const Vec& x) {
    Mat B = bseries(x);
    return (B.transpose() * B).eval();
  };
  ch.lo = Vec::Constant(n, -0.4);
  ch.hi = Vec::Constant(n, 0.4);
  m.chart = ch;
}

std::vector<Vec> sample_points(const FrameModel& m, int count, uint64_t seed) {
  FrameModel tmp = m;
  if (!tmp.chart) ensure_chart(tmp);
  const Vec lo = tmp.chart->lo, hi = tmp.chart->hi;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec x(m.dim);
    for (int a = 0; a < m.dim; ++a) x(a) = lo(a) + uni(gen) * (hi(a) - lo(a));
    pts.push_back(x);
  }
  return pts;
}

FrameModel catalog(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double def) {
    auto it = params.find(key);
    return it == params.end() ? def : it->second;
  };
  if (name == "euclidean3") return euclidean_space(3, name);
  if (name == "euclidean_line") return euclidean_space(1, name);
  if (name == "flat_torus") {
    FrameModel m = euclidean_space(static_cast<int>(get("q", 3)), name);
    m.compact = true;
    m.params["q"] = get("q", 3);
    return m;
  }
  if (name == "round_s3") {
    FrameModel m = sc_model(name, 3,
                            {{2, 0, 1, 2.0}, {0, 1, 2, 2.0}, {1, 2, 0, 2.0}});
    m.compact = true;
    m.einstein = true;
    m.conformally_flat = true;
    m.sasaki_xi = 2;
    return m;
  }
  if (name == "sl2r") {
    FrameModel m = sc_model(name, 3,
                            {{2, 0, 1, 2.0}, {0, 1, 2, -2.0}, {1, 2, 0, -2.0}});
    m.sasaki_xi = 2;
    return m;
  }
  if (name == "nil") {
    FrameModel m = sc_model(name, 3, {{2, 0, 1, 2.0}});
    m.sasaki_xi = 2;
    const double r2 = std::sqrt(2.0);
    ChartFrame ch;
    ch.dim = 3;
    ch.frame = [r2](const Vec& x) {
      Mat F = Mat::Zero(3, 3);
      F(0, 0) = r2;
      F(1, 1) = r2;
      F(2, 1) = r2 * x(0);
      F(2, 2) = 1.0;
      return F;
    };
    ch.metric = [](const Vec& x) {
      Mat G = Mat::Zero(3, 3);
      G(0, 0) = 0.5;
      G(1, 1) = 0.5 + x(0) * x(0);
      G(1, 2) = G(2, 1) = -x(0);
      G(2, 2) = 1.0;
      return G;
    };
    ch.frame_partials = [r2](const Vec&) {
      Tensor3 d(3);
      d(0, 2, 1) = r2;
      return d;
    };
    ch.scal_closed = [](const Vec&) { return -2.0; };
    ch.lo = Vec::Constant(3, -0.8);
    ch.hi = Vec::Constant(3, 0.8);
    m.chart = ch;
    return m;
  }
  if (name == "sol") {
    FrameModel m = sc_model(name, 3, {{0, 0, 2, 1.0}, {1, 1, 2, -1.0}});
    ChartFrame ch;
    ch.dim = 3;
    ch.frame = [](const Vec& x) {
      Mat F = Mat::Zero(3, 3);
      F(0, 0) = std::exp(-x(2));
      F(1, 1) = std::exp(x(2));
      F(2, 2) = 1.0;
      return F;
    };
    ch.metric = [](const Vec& x) {
      Mat G = Mat::Zero(3, 3);
      G(0, 0) = std::exp(2 * x(2));
      G(1, 1) = std::exp(-2 * x(2));
      G(2, 2) = 1.0;
      return G;
    };
    ch.frame_partials = [](const Vec& x) {
      Tensor3 d(3);
      d(2, 0, 0) = -std::exp(-x(2));
      d(2, 1, 1) = std::exp(x(2));
      return d;
    };
    ch.scal_closed = [](const Vec&) { return -2.0; };
    ch.lo = Vec::Constant(3, -0.8);
    ch.hi = Vec::Constant(3, 0.8);
    m.chart = ch;
    return m;
  }
  if (name == "h3") {
    FrameModel m = sc_model(name, 3, {{0, 0, 2, 1.0}, {1, 1, 2, 1.0}});
    m.einstein = true;
    m.conformally_flat = true;
    ChartFrame ch;
    ch.dim = 3;
    ch.frame = [](const Vec& x) {
      Mat F = Mat::Zero(3, 3);
      double e = std::exp(-x(2));
      F(0, 0) = e;
      F(1, 1) = e;
      F(2, 2) = 1.0;
      return F;
    };
    ch.metric = [](const Vec& x) {
      Mat G = Mat::Zero(3, 3);
      double e = std::exp(2 * x(2));
      G(0, 0) = e;
      G(1, 1) = e;
      G(2, 2) = 1.0;
      return G;
    };
    ch.frame_partials = [](const Vec& x) {
      Tensor3 d(3);
      double e = std::exp(-x(2));
      d(2, 0, 0) = -e;
      d(2, 1, 1) = -e;
      return d;
    };
    ch.scal_closed = [](const Vec&) { return -6.0; };
    ch.lo = Vec::Constant(3, -0.8);
    ch.hi = Vec::Constant(3, 0.8);
    m.chart = ch;
    return m;
  }
  if (name == "e2_geometry") {
    FrameModel m = sc_model(name, 3, {{1, 2, 0, 1.0}, {0, 2, 1, -1.0}});
    m.einstein = true;
    m.conformally_flat = true;
    return m;
  }
  if (name == "round_sphere_chart") {
    int k = static_cast<int>(get("k", 3));
    double radius = get("radius", 1.0);
    FrameModel m = space_form_chart(k, 1.0 / (radius * radius), 1.0, name);
    m.params["k"] = k;
    m.params["radius"] = radius;
    return m;
  }
  if (name == "hyperbolic_disk") {
    int k = static_cast<int>(get("k", 2));
    double radius = get("radius", 1.0);
    FrameModel m = space_form_chart(k, -1.0 / (radius * radius), 0.6, name);
    m.params["k"] = k;
    m.params["radius"] = radius;
    return m;
  }
  if (name == "s2xr1") {
    FrameModel m = product_model(catalog("round_sphere_chart", {{"k", 2}}),
                                 catalog("euclidean_line"), name);
    m.parallel_one_form = true;
    m.conformally_flat = true;
    return m;
  }
  if (name == "h2xr1") {
    FrameModel m = product_model(catalog("hyperbolic_disk", {{"k", 2}}),
                                 catalog("euclidean_line"), name);
    m.parallel_one_form = true;
    m.conformally_flat = true;
    return m;
  }
  if (name == "s2xs3")
    return product_model(catalog("round_sphere_chart", {{"k", 2}}), catalog("round_s3"), name);
  if (name == "s3xs3") {
    FrameModel m = product_model(catalog("round_s3"), catalog("round_s3"), name);
    m.einstein = true;
    return m;
  }
  if (name == "s3xtorus") {
    FrameModel m = product_model(catalog("round_s3"), catalog("flat_torus", {{"q", 3}}), name);
    m.parallel_one_form = true;
    return m;
  }
  if (name == "s2xs2")
    return product_model(catalog("round_sphere_chart", {{"k", 2}}),
                         catalog("round_sphere_chart", {{"k", 2}}), name);
  if (name == "deformed_sasakian_s3")
    return deformed_model(catalog("round_s3"), get("a2", 0.25), name);
  if (name == "deformed_sasakian_sl2r")
    return deformed_model(catalog("sl2r"), get("a2", 0.25), name);
  if (name == "conformal_flat_r3") {
    double cc = get("c", 1.0);
    ConformalFactor f;
    f.w = [cc](const Vec& x) { return std::exp(-2.0 * cc * x(2)); };
    f.grad_w = [cc](const Vec& x) {
      Vec g = Vec::Zero(3);
      g(2) = -2.0 * cc * std::exp(-2.0 * cc * x(2));
      return g;
    };
    FrameModel m = conformal_rescale(catalog("euclidean3"), f, name);
    m.chart->scal_closed = [cc](const Vec& x) {
      return -2.0 * cc * cc * std::exp(2.0 * cc * x(2));
    };
    m.chart->lo = Vec::Constant(3, -0.6);
    m.chart->hi = Vec::Constant(3, 0.6);
    m.conformally_flat = true;
    m.params["c"] = cc;
    return m;
  }
  throw std::invalid_argument("catalog: unknown model: " + name);
}

}  // namespace spinwork

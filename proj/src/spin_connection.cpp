#include "spinwork/spin_connection.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinwork {

namespace {

double eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((j - i) * (k - j) * (k - i) > 0) ? 1.0 : -1.0;
}

const ChartFrame& chart_of(const GeometryContext& ctx) {
  if (!ctx.model.chart)
    throw std::invalid_argument("context model has no chart: " + ctx.model.name);
  return *ctx.model.chart;
}

// coordinate partials of the field, column a = d(psi)/dx_a
CMat field_partials(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  if (f.partials) return f.partials(x);
  const int n = ctx.model.dim;
  CMat P(f.spinor_dim, n);
  for (int a = 0; a < n; ++a)
    P.col(a) = fd_partial([&](const Vec& y) { return f.eval(y); }, x, a, ctx.h);
  return P;
}

double rel(double raw, double deriv_norm, double coeff_scale, double psi_norm) {
  return raw / (1.0 + deriv_norm + coeff_scale * psi_norm);
}

}  // namespace

SpinorField constant_field(const CVec& psi0) {
  SpinorField f;
  f.spinor_dim = static_cast<int>(psi0.size());
  f.eval = [psi0](const Vec&) { return psi0; };
  int d = f.spinor_dim;
  f.partials = [psi0, d](const Vec& x) { return CMat::Zero(d, x.size()).eval(); };
  return f;
}

SpinorField exp_field(const std::vector<CMat>& M, const CVec& psi0) {
  SpinorField f;
  f.spinor_dim = static_cast<int>(psi0.size());
  const int d = f.spinor_dim;
  auto asum = [M, d](const Vec& x) {
    CMat A = CMat::Zero(d, d);
    for (size_t k = 0; k < M.size(); ++k) A += x(static_cast<int>(k)) * M[k];
    return A;
  };
  f.eval = [asum, psi0](const Vec& x) -> CVec { return asum(x).exp() * psi0; };
  f.partials = [asum, M, psi0, d](const Vec& x) -> CMat {
    CMat A = asum(x);
    CMat E = A.exp();
    CMat P(d, static_cast<int>(M.size()));
    for (size_t a = 0; a < M.size(); ++a) {
      // d/dt exp(A + t B)|_0 = exp(A) * sum_j (-ad_A)^j (B) / (j+1)!
      CMat term = M[a];
      CMat sum = term;
      for (int j = 1; j <= 60; ++j) {
        term = -(A * term - term * A) / (j + 1.0);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
      }
      P.col(static_cast<int>(a)) = E * sum * psi0;
    }
    return P;
  };
  return f;
}

GeometryContext make_context(const FrameModel& model, int chirality) {
  GeometryContext ctx;
  ctx.model = model;
  ensure_chart(ctx.model);
  ctx.rep = build_rep(model.dim, chirality);
  return ctx;
}

GeometryContext make_exp_context(const FrameModel& model, int chirality) {
  FrameModel m = model;
  m.chart.reset();
  if (!m.sc)
    throw std::invalid_argument("exponential chart needs bracket data: " + model.name);
  return make_context(m, chirality);
}

std::vector<CMat> spin_connection_matrices(const GeometryContext& ctx, const Vec& x) {
  const int n = ctx.model.dim;
  Tensor3 g = christoffel(ctx.model, x, ctx.path).gamma;
  std::vector<CMat> om(n);
  for (int k = 0; k < n; ++k) {
    CMat o = CMat::Zero(ctx.rep.spinor_dim(), ctx.rep.spinor_dim());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        o -= 0.5 * g(i, k, j) * (ctx.rep.gen[i] * ctx.rep.gen[j]);
    om[k] = o;
  }
  return om;
}

std::vector<CVec> cov_derivs(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  const int n = ctx.model.dim;
  Mat F = chart_of(ctx).frame(x);
  CMat P = field_partials(ctx, f, x);
  std::vector<CMat> om = spin_connection_matrices(ctx, x);
  CVec psi = f.eval(x);
  std::vector<CVec> out(n);
  for (int k = 0; k < n; ++k) {
    CVec d = om[k] * psi;
    for (int a = 0; a < n; ++a) d += F(a, k) * P.col(a);
    out[k] = d;
  }
  return out;
}

CVec frame_derivative(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int k) {
  const int n = ctx.model.dim;
  Mat F = chart_of(ctx).frame(x);
  CMat P = field_partials(ctx, f, x);
  CVec d = CVec::Zero(f.spinor_dim);
  for (int a = 0; a < n; ++a) d += F(a, k) * P.col(a);
  return d;
}

CVec cov_deriv(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int k) {
  return frame_derivative(ctx, f, x, k) + spin_connection_matrices(ctx, x)[k] * f.eval(x);
}

CVec dirac(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  std::vector<CVec> d = cov_derivs(ctx, f, x);
  CVec out = CVec::Zero(f.spinor_dim);
  for (int l = 0; l < ctx.model.dim; ++l) out += ctx.rep.gen[l] * d[l];
  return out;
}

SpinorField dirac_field(const GeometryContext& ctx, const SpinorField& f) {
  SpinorField g;
  g.spinor_dim = f.spinor_dim;
  g.eval = [ctx, f](const Vec& y) { return dirac(ctx, f, y); };
  return g;
}

CVec dirac_squared(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  GeometryContext outer = ctx;
  outer.h = kFdStep2;
  return dirac(outer, dirac_field(ctx, f), x);
}

CVec laplacian(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  const int n = ctx.model.dim;
  GeometryContext outer = ctx;
  outer.h = kFdStep2;
  Tensor3 g = christoffel(ctx.model, x, ctx.path).gamma;
  std::vector<CVec> first = cov_derivs(ctx, f, x);
  CVec out = CVec::Zero(f.spinor_dim);
  for (int u = 0; u < n; ++u) {
    SpinorField gu;
    gu.spinor_dim = f.spinor_dim;
    gu.eval = [ctx, f, u](const Vec& y) { return cov_deriv(ctx, f, y, u); };
    out -= cov_deriv(outer, gu, x, u);
    for (int w = 0; w < n; ++w) out += g(w, u, u) * first[w];
  }
  return out;
}

double lichnerowicz_residual(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  CVec psi = f.eval(x);
  CVec r = 4.0 * dirac_squared(ctx, f, x) - 4.0 * laplacian(ctx, f, x) -
           curvature(ctx.model, x, ctx.path).scal * psi;
  return r.cwiseAbs().maxCoeff() / (1.0 + psi.norm());
}

CVec curvature_action(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int i,
                      int j) {
  const int n = ctx.model.dim;
  GeometryContext outer = ctx;
  outer.h = kFdStep2;
  auto dir_field = [&](int k) {
    SpinorField g;
    g.spinor_dim = f.spinor_dim;
    g.eval = [ctx, f, k](const Vec& y) { return cov_deriv(ctx, f, y, k); };
    return g;
  };
  CVec out = cov_deriv(outer, dir_field(j), x, i) - cov_deriv(outer, dir_field(i), x, j);
  Tensor3 c = structure_constants_at(ctx.model, x, ctx.path);
  std::vector<CVec> first = cov_derivs(ctx, f, x);
  for (int w = 0; w < n; ++w) out -= c(w, i, j) * first[w];
  return out;
}

CVec curvature_action_algebraic(const GeometryContext& ctx, const CurvatureData& cd,
                                const CVec& psi, int i, int j) {
  const int n = ctx.model.dim;
  CVec out = CVec::Zero(psi.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      out -= 0.5 * cd.R(u, v, i, j) * (ctx.rep.gen[u] * (ctx.rep.gen[v] * psi));
  return out;
}

CVec half_ricci_residual(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int k) {
  const int n = ctx.model.dim;
  GeometryContext outer = ctx;
  outer.h = kFdStep2;
  CurvatureData cd = curvature(ctx.model, x, ctx.path);
  CVec psi = f.eval(x);
  CVec lhs = CVec::Zero(f.spinor_dim);
  for (int l = 0; l < n; ++l) lhs += 0.5 * cd.ric(l, k) * (ctx.rep.gen[l] * psi);

  SpinorField gk;
  gk.spinor_dim = f.spinor_dim;
  gk.eval = [ctx, f, k](const Vec& y) { return cov_deriv(ctx, f, y, k); };
  CVec rhs = dirac(outer, gk, x) - cov_deriv(outer, dirac_field(ctx, f), x, k);
  Tensor3 g = christoffel(ctx.model, x, ctx.path).gamma;
  std::vector<CVec> first = cov_derivs(ctx, f, x);
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) rhs -= g(w, u, k) * (ctx.rep.gen[u] * first[w]);
  return lhs - rhs;
}

Mat energy_momentum(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  const int n = ctx.model.dim;
  std::vector<CVec> d = cov_derivs(ctx, f, x);
  CVec psi = f.eval(x);
  Mat T(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      double t = re_inner(ctx.rep.gen[k] * d[l] + ctx.rep.gen[l] * d[k], psi);
      T(k, l) = t;
      T(l, k) = t;
    }
  return T;
}

Vec energy_momentum_divergence(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  const int n = ctx.model.dim;
  Mat F = chart_of(ctx).frame(x);
  Tensor3 g = christoffel(ctx.model, x, ctx.path).gamma;
  Mat T = energy_momentum(ctx, f, x);
  auto t_flat = [&](const Vec& y) {
    Mat t = energy_momentum(ctx, f, y);
    Vec v(n * n);
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v(p++) = t(i, j);
    return v;
  };
  std::vector<Vec> dT(n);
  for (int a = 0; a < n; ++a) dT[a] = fd_partial(t_flat, x, a, kFdStep2);
  Vec out = Vec::Zero(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double s = 0;  // T_{ij;i}
      for (int a = 0; a < n; ++a) s += F(a, i) * dT[a](i * n + j);
      for (int l = 0; l < n; ++l) s -= g(l, i, i) * T(l, j) + g(l, i, j) * T(i, l);
      out(j) += s;
    }
  return out;
}

Vec energy_momentum_divergence_dirac_form(const GeometryContext& ctx, const SpinorField& f,
                                          const Vec& x) {
  const int n = ctx.model.dim;
  GeometryContext outer = ctx;
  outer.h = kFdStep2;
  CVec psi = f.eval(x);
  SpinorField df = dirac_field(ctx, f);
  CVec dpsi = df.eval(x);
  CVec d2psi = dirac(outer, df, x);
  std::vector<CVec> first = cov_derivs(ctx, f, x);
  Vec out(n);
  for (int j = 0; j < n; ++j)
    out(j) = re_inner(cov_deriv(outer, df, x, j), psi) - re_inner(first[j], dpsi) -
             re_inner(ctx.rep.gen[j] * d2psi, psi);
  return out;
}

Vec spinor_alpha_form(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  const int n = ctx.model.dim;
  auto q = [&](const Vec& y) { return f.eval(y).squaredNorm(); };
  Vec dq = frame_scalar_gradient(ctx, q, x);
  double qq = q(x);
  if (qq < 1e-14) throw std::domain_error("spinor field vanishes at the sample point");
  return dq / (2.0 * (n - 1) * qq);
}

Mat spinor_beta_tensor(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  double qq = f.eval(x).squaredNorm();
  if (qq < 1e-14) throw std::domain_error("spinor field vanishes at the sample point");
  return -energy_momentum(ctx, f, x) / (2.0 * qq);
}

double equation_residual(const GeometryContext& ctx, const SpinorField& f, const EquationSpec& eq,
                         const Vec& x) {
  const int n = ctx.model.dim;
  std::vector<CVec> d = cov_derivs(ctx, f, x);
  CVec psi = f.eval(x);
  double pn = psi.norm();

  auto dirac_res = [&](double lambda) {
    CVec dp = CVec::Zero(f.spinor_dim);
    for (int l = 0; l < n; ++l) dp += ctx.rep.gen[l] * d[l];
    return rel((dp - lambda * psi).norm(), dp.norm(), std::abs(lambda), pn);
  };

  switch (eq.kind) {
    case EquationKind::Eigenspinor:
      return dirac_res(eq.lambda);
    case EquationKind::Killing: {
      double worst = 0;
      for (int k = 0; k < n; ++k) {
        CVec r = d[k] - eq.b * (ctx.rep.gen[k] * psi);
        worst = std::max(worst, rel(r.norm(), d[k].norm(), std::abs(eq.b), pn));
      }
      return worst;
    }
    case EquationKind::QuasiKilling: {
      int xi = ctx.model.sasaki_xi;
      if (eq.b != 0.0 && xi < 0)
        throw std::invalid_argument("quasi-Killing needs an adapted direction: " + ctx.model.name);
      double worst = 0;
      for (int k = 0; k < n; ++k) {
        CVec rhs = eq.a * (ctx.rep.gen[k] * psi);
        if (k == xi) rhs += eq.b * (ctx.rep.gen[xi] * psi);
        worst = std::max(worst,
                         rel((d[k] - rhs).norm(), d[k].norm(), std::abs(eq.a) + std::abs(eq.b), pn));
      }
      return worst;
    }
    case EquationKind::WeakKilling: {
      CurvatureData cd = curvature(ctx.model, x, ctx.path);
      if (std::abs(cd.scal) < 1e-12)
        throw std::domain_error("scalar curvature vanishes at a sample point");
      Vec alpha = cd.grad_s / (2.0 * (n - 1) * cd.scal);
      CMat alpha_act = vector_action(ctx.rep, alpha);
      double worst = 0;
      for (int k = 0; k < n; ++k) {
        Vec beta_k = (2.0 * eq.lambda / ((n - 2) * cd.scal)) * cd.ric.col(k);
        beta_k(k) -= eq.lambda / (n - 2);
        CVec rhs = n * alpha(k) * psi + vector_action(ctx.rep, beta_k) * psi +
                   ctx.rep.gen[k] * (alpha_act * psi);
        double scale = n * std::abs(alpha(k)) + beta_k.norm() + alpha.norm();
        worst = std::max(worst, rel((d[k] - rhs).norm(), d[k].norm(), scale, pn));
      }
      return worst;
    }
    case EquationKind::EinsteinDirac: {
      CurvatureData cd = curvature(ctx.model, x, ctx.path);
      Mat T = energy_momentum(ctx, f, x);
      Mat lhs = cd.ric - 0.5 * cd.scal * Mat::Identity(n, n) - (eq.eps / 4.0) * T;
      double scale = 1.0 + cd.ric.cwiseAbs().maxCoeff() + 0.5 * std::abs(cd.scal) +
                     0.25 * T.cwiseAbs().maxCoeff();
      return std::max(dirac_res(eq.lambda), lhs.cwiseAbs().maxCoeff() / scale);
    }
  }
  return 0.0;
}

ResidualReport residual_report(const GeometryContext& ctx, const SpinorField& f,
                               const EquationSpec& eq, int samples, uint64_t seed, double tol) {
  ResidualReport rep;
  rep.kind = eq.kind;
  rep.seed = seed;
  rep.h = ctx.h;
  rep.tolerance = tol;
  for (const Vec& x : sample_points(ctx.model, samples, seed)) {
    if (f.eval(x).squaredNorm() < 1e-14)
      throw std::domain_error("spinor field vanishes at a sample point");
    double r = equation_residual(ctx, f, eq, x);
    rep.per_point.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

SpinorShape3d decompose_3d(const GeometryContext& ctx, const SpinorField& f, const Vec& x) {
  if (ctx.model.dim != 3 || ctx.rep.spinor_dim() != 2)
    throw std::invalid_argument("frame decomposition requires a 3-dimensional model");
  std::vector<CVec> d = cov_derivs(ctx, f, x);
  CVec psi = f.eval(x);
  double qq = psi.squaredNorm();
  if (qq < 1e-14) throw std::domain_error("spinor field vanishes at the sample point");

  SpinorShape3d out;
  out.omega = Vec(3);
  out.gamma = Mat(3, 3);
  for (int k = 0; k < 3; ++k) {
    out.omega(k) = re_inner(d[k], psi) / qq;
    for (int u = 0; u < 3; ++u) out.gamma(u, k) = re_inner(d[k], ctx.rep.gen[u] * psi) / qq;
  }
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    CVec recon = out.omega(k) * psi;
    for (int u = 0; u < 3; ++u) recon += out.gamma(u, k) * (ctx.rep.gen[u] * psi);
    worst = std::max(worst, (d[k] - recon).norm() / (1.0 + d[k].norm()));
  }
  out.reconstruction_residual = worst;

  out.alpha = 0.5 * out.omega;
  out.beta = 0.5 * (out.gamma + out.gamma.transpose());
  out.tau = 0.5 * (out.gamma - out.gamma.transpose());
  out.trace_h = -out.beta.trace();

  Mat star_alpha = Mat::Zero(3, 3);
  for (int w = 0; w < 3; ++w)
    for (int k = 0; k < 3; ++k)
      for (int v = 0; v < 3; ++v) star_alpha(w, k) += eps3(w, k, v) * out.alpha(v);
  out.dual_residual =
      (out.tau + ctx.rep.chirality * star_alpha).cwiseAbs().maxCoeff();
  return out;
}

std::vector<CMat> equivariant_matrices(const GeometryContext& ctx, const std::vector<CMat>& A) {
  if (!ctx.model.sc)
    throw std::invalid_argument("group-invariant fields need bracket data: " + ctx.model.name);
  std::vector<CMat> om = spin_connection_matrices(ctx, Vec::Zero(ctx.model.dim));
  std::vector<CMat> M(A.size());
  for (size_t k = 0; k < A.size(); ++k) M[k] = A[k] - om[k];
  return M;
}

std::vector<CMat> quasi_killing_matrices(const GeometryContext& ctx, double a, double b) {
  const int n = ctx.model.dim;
  int xi = ctx.model.sasaki_xi;
  if (b != 0.0 && xi < 0)
    throw std::invalid_argument("quasi-Killing needs an adapted direction: " + ctx.model.name);
  std::vector<CMat> A(n);
  for (int k = 0; k < n; ++k) {
    A[k] = a * ctx.rep.gen[k];
    if (k == xi) A[k] += b * ctx.rep.gen[xi];
  }
  return equivariant_matrices(ctx, A);
}

double flatness_residual(const GeometryContext& ctx, const std::vector<CMat>& M) {
  if (!ctx.model.sc)
    throw std::invalid_argument("flatness check needs bracket data: " + ctx.model.name);
  const Tensor3& c = ctx.model.sc->c;
  const int n = ctx.model.dim;
  double worst = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      CMat r = M[u] * M[v] - M[v] * M[u];
      for (int w = 0; w < n; ++w) r += c(w, u, v) * M[w];
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  return worst;
}

SpinorField equivariant_field(const GeometryContext&, const std::vector<CMat>& M,
                              const CVec& psi0) {
  return exp_field(M, psi0);
}

double frame_scalar_derivative(const GeometryContext& ctx,
                               const std::function<double(const Vec&)>& f, const Vec& x, int k,
                               double h) {
  const int n = ctx.model.dim;
  Mat F = chart_of(ctx).frame(x);
  double s = 0;
  for (int a = 0; a < n; ++a) s += F(a, k) * fd_partial_scalar(f, x, a, h);
  return s;
}

Vec frame_scalar_gradient(const GeometryContext& ctx, const std::function<double(const Vec&)>& f,
                          const Vec& x, double h) {
  const int n = ctx.model.dim;
  Mat F = chart_of(ctx).frame(x);
  Vec ds(n);
  for (int a = 0; a < n; ++a) ds(a) = fd_partial_scalar(f, x, a, h);
  return F.transpose() * ds;
}

double scalar_laplacian(const GeometryContext& ctx, const std::function<double(const Vec&)>& f,
                        const Vec& x) {
  const int n = ctx.model.dim;
  Tensor3 g = christoffel(ctx.model, x, ctx.path).gamma;
  double out = 0;
  for (int u = 0; u < n; ++u) {
    auto gu = [&](const Vec& y) { return frame_scalar_derivative(ctx, f, y, u); };
    out -= frame_scalar_derivative(ctx, gu, x, u, kFdStep2);
    for (int w = 0; w < n; ++w) out += g(w, u, u) * frame_scalar_derivative(ctx, f, x, w);
  }
  return out;
}

EigenvalueBound eigenvalue_bound(const GeometryContext& ctx, const SpinorField& f, double lambda,
                                 const Vec& x) {
  const int n = ctx.model.dim;
  auto q = [&](const Vec& y) { return f.eval(y).squaredNorm(); };
  double qq = q(x);
  if (qq < 1e-14) throw std::domain_error("spinor field vanishes at the sample point");
  Mat T = energy_momentum(ctx, f, x);
  Vec dq = frame_scalar_gradient(ctx, q, x);
  double lap_q = scalar_laplacian(ctx, q, x);
  double S = curvature(ctx.model, x, ctx.path).scal;
  EigenvalueBound out;
  out.lhs = lambda * lambda;
  out.rhs = 0.25 * S + T.squaredNorm() / (4.0 * qq * qq) + lap_q / (2.0 * qq) +
            n * dq.squaredNorm() / (4.0 * (n - 1) * qq * qq);
  out.slack = out.lhs - out.rhs;
  return out;
}

}  // namespace spinwork

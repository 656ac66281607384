#include "spinwork/products.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinwork/frame_geometry.hpp"

namespace spinwork {

namespace {

cplx i_pow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

CMat kron_mat(const CMat& A, const CMat& B) {
  CMat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

}  // namespace

CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ProductRep build_product_rep(const CliffordRep& rep_m, const CliffordRep& rep_n) {
  if (rep_m.n <= 0 || rep_m.n % 2 != 0)
    throw std::invalid_argument("build_product_rep: first factor dimension must be even");
  if (rep_n.n <= 0) throw std::invalid_argument("build_product_rep: empty second factor");
  ProductRep out;
  out.p = rep_m.n / 2;
  out.r = rep_n.n;
  out.rep_m = rep_m;
  out.rep_n = rep_n;
  out.mu_m = volume_element(rep_m);
  const CMat idn = CMat::Identity(rep_n.spinor_dim(), rep_n.spinor_dim());
  const CMat twist = i_pow(out.p) * out.mu_m;
  for (const auto& g : rep_m.gen) out.gen.push_back(kron_mat(g, idn));
  for (const auto& g : rep_n.gen) out.gen.push_back(kron_mat(twist, g));
  return out;
}

CVec ProductSpinor::eval(const Vec& xm, const Vec& xn) const {
  return kron(psi_m.eval(xm), psi_n.eval(xn));
}

SpinorField matrix_field(const CMat& C, const SpinorField& f) {
  SpinorField g;
  g.spinor_dim = static_cast<int>(C.rows());
  auto ev = f.eval;
  g.eval = [C, ev](const Vec& x) -> CVec { return C * ev(x); };
  if (f.partials) {
    auto pr = f.partials;
    g.partials = [C, pr](const Vec& x) -> CMat { return C * pr(x); };
  }
  g.claimed = f.claimed;
  return g;
}

ProductSpinor product_action(const ProductRep& rep, int leg, const ProductSpinor& psi) {
  if (leg < 0 || leg >= 2 * rep.p + rep.r)
    throw std::invalid_argument("product_action: leg out of range");
  if (psi.psi_m.spinor_dim != rep.rep_m.spinor_dim() ||
      psi.psi_n.spinor_dim != rep.rep_n.spinor_dim())
    throw std::invalid_argument("product_action: factor dimensions do not match the module");
  ProductSpinor out;
  if (leg < 2 * rep.p) {
    out.psi_m = matrix_field(rep.rep_m.gen[leg], psi.psi_m);
    out.psi_n = psi.psi_n;
  } else {
    out.psi_m = matrix_field(CMat(i_pow(rep.p) * rep.mu_m), psi.psi_m);
    out.psi_n = matrix_field(rep.rep_n.gen[leg - 2 * rep.p], psi.psi_n);
  }
  return out;
}

CVec product_dirac(const ProductRep& rep, const GeometryContext& ctx_m,
                   const GeometryContext& ctx_n, const ProductSpinor& psi, const Vec& x) {
  const int nm = ctx_m.model.dim;
  const int nn = ctx_n.model.dim;
  if (nm != 2 * rep.p || nn != rep.r)
    throw std::invalid_argument("product_dirac: model dimensions do not match the module");
  if (x.size() != nm + nn)
    throw std::invalid_argument("product_dirac: point must have " + std::to_string(nm + nn) +
                                " coordinates");
  const Vec xm = x.head(nm);
  const Vec xn = x.tail(nn);
  const CVec vm = psi.psi_m.eval(xm);
  const CVec vn = psi.psi_n.eval(xn);
  CVec out = CVec::Zero(rep.spinor_dim());
  for (int i = 0; i < nm; ++i) out += rep.gen[i] * kron(cov_deriv(ctx_m, psi.psi_m, xm, i), vn);
  for (int k = 0; k < nn; ++k)
    out += rep.gen[2 * rep.p + k] * kron(vm, cov_deriv(ctx_n, psi.psi_n, xn, k));
  return out;
}

std::vector<ProductSpinor> product_dirac_field(const ProductRep& rep,
                                               const GeometryContext& ctx_m,
                                               const GeometryContext& ctx_n,
                                               const ProductSpinor& psi) {
  ProductSpinor a;
  a.psi_m = dirac_field(ctx_m, psi.psi_m);
  a.psi_m.spinor_dim = psi.psi_m.spinor_dim;
  a.psi_n = psi.psi_n;
  ProductSpinor b;
  b.psi_m = matrix_field(CMat(i_pow(rep.p) * rep.mu_m), psi.psi_m);
  b.psi_n = dirac_field(ctx_n, psi.psi_n);
  return {a, b};
}

EinsteinPairResult einstein_pair(const KillingPairSpec& spec, const GeometryContext& ctx_m,
                                 const GeometryContext& ctx_n, const SpinorField& psi_m,
                                 const SpinorField& psi_n, int samples, uint64_t seed) {
  if (spec.lambda_m == 0.0 || spec.lambda_n == 0.0)
    throw std::invalid_argument("einstein_pair: factor eigenvalues must be nonzero");
  if (spec.p < 1 || ctx_m.model.dim != 2 * spec.p)
    throw std::invalid_argument("einstein_pair: first factor dimension mismatch");
  const int p = spec.p;
  const int r = ctx_n.model.dim;
  if (psi_m.spinor_dim != ctx_m.rep.spinor_dim() || psi_n.spinor_dim != ctx_n.rep.spinor_dim())
    throw std::invalid_argument("einstein_pair: spinor dimension mismatch");

  // factor Killing preconditions: Killing number = -eigenvalue / dimension
  EquationSpec eq_m{EquationKind::Killing, 0.0, 0.0, -spec.lambda_m / (2 * p), +1};
  EquationSpec eq_n{EquationKind::Killing, 0.0, 0.0, -spec.lambda_n / r, +1};
  if (!residual_report(ctx_m, psi_m, eq_m, samples, seed, 1e-6).pass)
    throw std::invalid_argument("einstein_pair: first factor fails its Killing residual");
  if (!residual_report(ctx_n, psi_n, eq_n, samples, seed + 1, 1e-6).pass)
    throw std::invalid_argument("einstein_pair: second factor fails its Killing residual");

  const int sgn = spec.sign >= 0 ? +1 : -1;
  const double lambda =
      sgn * std::sqrt(spec.lambda_m * spec.lambda_m + spec.lambda_n * spec.lambda_n);
  const double A = lambda + spec.lambda_n * (p % 2 == 0 ? 1.0 : -1.0);
  const auto [proj_p, proj_m] = chirality_split(ctx_m.rep);
  const CMat C = A * proj_p + spec.lambda_m * proj_m;

  EinsteinPairResult out;
  out.lambda = lambda;
  out.phi.psi_m = matrix_field(C, psi_m);
  out.phi.psi_n = psi_n;

  ProductRep prep = build_product_rep(ctx_m.rep, ctx_n.rep);
  const auto xs_m = sample_points(ctx_m.model, samples, seed);
  const auto xs_n = sample_points(ctx_n.model, samples, seed + 1);

  double hyp = 0.0, dir = 0.0, nrm = 0.0, sym = 0.0, cross = 0.0, dm = 0.0, dn = 0.0;
  for (size_t s = 0; s < xs_m.size() && s < xs_n.size(); ++s) {
    const Vec& xm = xs_m[s];
    const Vec& xn = xs_n[s];
    const CVec chi = out.phi.psi_m.eval(xm);
    const CVec vm = psi_m.eval(xm);
    const CVec vn = psi_n.eval(xn);
    const CVec phi = kron(chi, vn);
    const double phi2 = phi.squaredNorm();
    const double nm2 = vm.squaredNorm();
    const double nn2 = vn.squaredNorm();

    // half-spinor assumptions: equal norms, and every frame vector maps one
    // half orthogonally to the other
    const CVec plus = proj_p * vm;
    const CVec minus = proj_m * vm;
    double h = std::abs(plus.squaredNorm() - minus.squaredNorm());
    for (int i = 0; i < 2 * p; ++i) {
      h = std::max(h, std::abs(herm(CVec(ctx_m.rep.gen[i] * plus), minus)));
      h = std::max(h, std::abs(herm(CVec(ctx_m.rep.gen[i] * minus), plus)));
    }
    hyp = std::max(hyp, h / (1.0 + nm2));

    std::vector<CVec> dchi(2 * p), dvn(r);
    for (int i = 0; i < 2 * p; ++i) dchi[i] = cov_deriv(ctx_m, out.phi.psi_m, xm, i);
    for (int k = 0; k < r; ++k) dvn[k] = cov_deriv(ctx_n, psi_n, xn, k);

    CVec dphi = CVec::Zero(phi.size());
    for (int i = 0; i < 2 * p; ++i) dphi += prep.gen[i] * kron(dchi[i], vn);
    for (int k = 0; k < r; ++k) dphi += prep.gen[2 * p + k] * kron(chi, dvn[k]);
    dir = std::max(dir, (dphi - lambda * phi).norm() / (1.0 + phi.norm()));

    const double want_norm = lambda * A * nm2 * nn2;
    nrm = std::max(nrm, std::abs(phi2 - want_norm) / (1.0 + std::abs(want_norm)));

    for (int i = 0; i < 2 * p; ++i)
      for (int j = i + 1; j < 2 * p; ++j) {
        CVec v = prep.gen[i] * kron(dchi[j], vn) + prep.gen[j] * kron(dchi[i], vn);
        sym = std::max(sym, v.norm() / (1.0 + phi.norm()));
      }
    for (int k = 0; k < r; ++k)
      for (int l = k + 1; l < r; ++l) {
        CVec v = prep.gen[2 * p + k] * kron(chi, dvn[l]) + prep.gen[2 * p + l] * kron(chi, dvn[k]);
        sym = std::max(sym, v.norm() / (1.0 + phi.norm()));
      }

    for (int i = 0; i < 2 * p; ++i)
      for (int k = 0; k < r; ++k) {
        CVec v = prep.gen[i] * kron(chi, dvn[k]) + prep.gen[2 * p + k] * kron(dchi[i], vn);
        cross = std::max(cross, std::abs(herm(v, phi)) / (1.0 + phi2));
      }

    const double want_m = spec.lambda_m * spec.lambda_m / (2.0 * p) * A * nm2 * nn2;
    const double want_n = spec.lambda_n * spec.lambda_n / r * A * nm2 * nn2;
    for (int i = 0; i < 2 * p; ++i) {
      const double v = herm(CVec(prep.gen[i] * kron(dchi[i], vn)), phi).real();
      dm = std::max(dm, std::abs(v - want_m) / (1.0 + std::abs(want_m)));
    }
    for (int k = 0; k < r; ++k) {
      const double v = herm(CVec(prep.gen[2 * p + k] * kron(chi, dvn[k])), phi).real();
      dn = std::max(dn, std::abs(v - want_n) / (1.0 + std::abs(want_n)));
    }
  }

  out.hypothesis_residual = hyp;
  out.hypotheses_hold = hyp < 1e-6;
  out.dirac_residual = dir;
  out.norm_residual = nrm;
  out.symmetrized_residual = sym;
  if (out.hypotheses_hold) out.cross_term = cross;
  out.diagonal_m_residual = dm;
  out.diagonal_n_residual = dn;
  return out;
}

double scalar_ratio(int r) {
  if (r < 2) throw std::invalid_argument("scalar_ratio: needs r >= 2");
  const double q = 3.0 * r * r - 19.0 * r + 6.0;
  return (q + std::sqrt(q * q + 180.0 * r * r * (r - 1.0))) / (30.0 * r);
}

ProductAlgebraReport theorem75_algebra(double s_m, double s_n, int r, double lambda_m,
                                       double lambda_n, double norms) {
  if (r < 2) throw std::invalid_argument("theorem75_algebra: needs r >= 2");
  if (lambda_m == 0.0 || lambda_n == 0.0)
    throw std::invalid_argument("theorem75_algebra: factor eigenvalues must be nonzero");
  const double lm2 = lambda_m * lambda_m;
  const double ln2 = lambda_n * lambda_n;
  if (std::abs(lm2 - 0.3 * s_m) > 1e-8 * (1.0 + std::abs(s_m)))
    throw std::invalid_argument(
        "theorem75_algebra: first factor violates its Killing relation lambda^2 = (3/10) S");
  if (std::abs(ln2 - r * s_n / (4.0 * (r - 1.0))) > 1e-8 * (1.0 + std::abs(s_n)))
    throw std::invalid_argument(
        "theorem75_algebra: second factor violates its Killing relation lambda^2 = r S / (4(r-1))");

  ProductAlgebraReport out;
  out.lambda = -std::sqrt(lm2 + ln2);
  const double gap = out.lambda - lambda_n;  // negative for every sign of lambda_n
  out.star1_value = 6.0 * (s_m / 3.0 - s_m - s_n) / (lm2 * gap);
  out.star2_value = r * (2.0 * s_n / r - s_m - s_n) / (ln2 * gap);
  out.consistency = std::abs(out.star1_value - out.star2_value) /
                    (1.0 + std::abs(out.star1_value) + std::abs(out.star2_value));
  out.star1_residual = std::abs(out.star1_value - norms) / (1.0 + std::abs(out.star1_value));
  out.star2_residual = std::abs(out.star2_value - norms) / (1.0 + std::abs(out.star2_value));
  out.ricci_block_m = s_m / 6.0;
  out.ricci_block_n = s_n / r;
  out.einstein =
      std::abs(out.ricci_block_m - out.ricci_block_n) < 1e-9 * (1.0 + std::abs(out.ricci_block_m));
  return out;
}

}  // namespace spinwork

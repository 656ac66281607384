#include "spinwork/wk_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinwork {

namespace {

Vec cross(const Vec& a, const Vec& b) {
  Vec c(3);
  c(0) = a(1) * b(2) - a(2) * b(1);
  c(1) = a(2) * b(0) - a(0) * b(2);
  c(2) = a(0) * b(1) - a(1) * b(0);
  return c;
}

double rel_scalar(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

double rel_cvec(const CVec& lhs, const CVec& rhs) {
  return (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm());
}

// (nabla_{E_u} Ric)(E_k) as a vector
Vec ric_deriv(const CurvatureData& cd, int k, int u) {
  const int n = static_cast<int>(cd.ric.rows());
  Vec d(n);
  for (int w = 0; w < n; ++w) d(w) = cd.ric_cov(w, k, u);
  return d;
}

}  // namespace

WkFirstIntegrals wk_first_integrals(const CliffordRep& rep, const CurvatureData& cd,
                                    const CVec& psi, double lambda) {
  const int n = rep.n;
  if (cd.ric.rows() != n)
    throw std::invalid_argument("wk_first_integrals: curvature/representation dimension mismatch");
  if (!cd.has_derivatives)
    throw std::invalid_argument("wk_first_integrals: curvature data lacks derivative fields");
  // The identities are written in the representation's own Clifford action, so
  // the module's eigenvalue enters directly; even-degree products of the
  // generators already carry the chirality factor.
  const double le = lambda;
  const double l2 = lambda * lambda;
  const double S = cd.scal;
  const double r2 = cd.ric_norm2;
  const Vec& ds = cd.grad_s;
  const double ds2 = ds.squaredNorm();
  const double lap = cd.lap_s;
  const double nn = n;

  auto act = [&](const Vec& v) -> CMat { return vector_action(rep, v); };

  WkFirstIntegrals out;

  const CMat ds_act = act(ds);
  const Vec ric_ds = cd.ric * ds;
  double worst = 0;
  for (int k = 0; k < n; ++k) {
    const Vec ek = Vec::Unit(n, k);
    const Vec rk = cd.ric.col(k);
    const Vec rrk = cd.ric * rk;
    CVec lhs = 4.0 * (nn - 1) * (nn - 1) * l2 *
               ((nn - 3) * S * S * (act(ek) * psi) - 2.0 * (nn - 4) * S * (act(rk) * psi) -
                4.0 * (act(rrk) * psi));
    CVec bracket = (nn - 2) * S * ds(k) * psi - 2.0 * (nn - 2) * ds.dot(rk) * psi -
                   S * (act(ek) * (ds_act * psi)) + 2.0 * (act(ek) * (act(ric_ds) * psi)) -
                   2.0 * (nn - 1) * (ds_act * (act(rk) * psi));
    CVec dsum = CVec::Zero(psi.size());
    for (int u = 0; u < n; ++u)
      dsum += act(Vec::Unit(n, u)) * (act(ric_deriv(cd, k, u)) * psi);
    bracket += 2.0 * (nn - 1) * S * dsum;
    lhs += 2.0 * (nn - 1) * (nn - 2) * le * bracket;

    CVec rhs = (nn - 2) * (nn - 2) *
               ((nn - 1) * (nn - 1) * S * S * (act(rk) * psi) + ds2 * (act(ek) * psi) +
                (nn - 1) * S * lap * (act(ek) * psi) + nn * (nn - 2) * ds(k) * (ds_act * psi) -
                (nn - 1) * (nn - 2) * S * (act(cd.hess_s.col(k)) * psi));
    worst = std::max(worst, rel_cvec(lhs, rhs));
  }
  out.vector_identity = worst;

  const double lhs2 = 4.0 * (nn - 1) * l2 * ((nn * nn - 5 * nn + 8) * S * S - 4.0 * r2);
  const double rhs2 =
      (nn - 2) * (nn - 2) * ((nn - 1) * S * S * S + nn * ds2 + 2.0 * (nn - 1) * S * lap);
  out.scalar_identity = rel_scalar(lhs2, rhs2);

  const double p2 = psi.squaredNorm();
  double lhs3 = 4.0 * (nn - 1) * (nn - 1) * l2 *
                ((nn - 3) * S * S * S - 2.0 * (nn - 4) * S * r2 - 4.0 * cd.trace_ric3) * p2;
  double paired = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      paired += re_inner(act(Vec::Unit(n, u)) * (act(ric_deriv(cd, v, u)) * psi),
                         act(cd.ric.col(v)) * psi);
  lhs3 += 4.0 * (nn - 1) * (nn - 1) * (nn - 2) * le * S * paired;
  const double rhs3 = (nn - 2) * (nn - 2) *
                      ((nn - 1) * (nn - 1) * S * S * r2 + S * ds2 + (nn - 1) * S * S * lap +
                       nn * (nn - 2) * ds.dot(cd.ric * ds) -
                       (nn - 1) * (nn - 2) * S * cd.hess_s.cwiseProduct(cd.ric).sum()) *
                      p2;
  out.cubic_identity = rel_scalar(lhs3, rhs3);

  if (n == 3) out.dim3_identity = rel_scalar(8.0 * l2 * (S * S - 2.0 * r2), S * S * S);
  return out;
}

std::optional<double> lambda2_scalar_form(int n, double scal, double ric_norm2) {
  const double nn = n;
  const double denom = (nn * nn - 5 * nn + 8) * scal * scal - 4.0 * ric_norm2;
  if (std::abs(denom) <= 1e-9 * std::max(1.0, scal * scal)) return std::nullopt;
  return 0.25 * (nn - 2) * (nn - 2) * scal * scal * scal / denom;
}

std::optional<double> lambda2_cubic_form(int n, double scal, double ric_norm2,
                                         double trace_ric3) {
  const double nn = n;
  const double denom = (nn - 3) * scal * scal * scal - 2.0 * (nn - 4) * scal * ric_norm2 -
                       4.0 * trace_ric3;
  if (std::abs(denom) <= 1e-9 * std::max(1.0, std::abs(scal * scal * scal))) return std::nullopt;
  return 0.25 * (nn - 2) * (nn - 2) * scal * scal * ric_norm2 / denom;
}

double friedrich_bound(int n, double scal) { return n * scal / (4.0 * (n - 1.0)); }

EinsteinSpinorBound einstein_spinor_bound(const CurvatureData& cd, double lambda) {
  const double nn = static_cast<double>(cd.ric.rows());
  const double S = cd.scal;
  EinsteinSpinorBound b;
  b.lhs = lambda * lambda * ((nn * nn - 5 * nn + 8) * S * S - 4.0 * cd.ric_norm2);
  b.rhs = (nn - 2) * (nn - 2) / (4.0 * (nn - 1)) *
          ((nn - 1) * S * S * S + nn * cd.grad_s.squaredNorm() + 2.0 * (nn - 1) * S * cd.lap_s);
  b.slack = b.lhs - b.rhs;
  return b;
}

Dim3Identities dim3_wk_identities(const CurvatureData& cd, double lambda, int chirality) {
  if (cd.ric.rows() != 3)
    throw std::invalid_argument("dim3_wk_identities: three-dimensional data required");
  const double le = chirality > 0 ? lambda : -lambda;
  const double S = cd.scal;
  Dim3Identities out;

  double worst = 0;
  for (int k = 0; k < 3; ++k)
    for (int l = k + 1; l < 3; ++l) {
      const Vec ak = 2.0 * cd.ric.col(k) - S * Vec::Unit(3, k);
      const Vec al = 2.0 * cd.ric.col(l) - S * Vec::Unit(3, l);
      const Vec lhs =
          8.0 * le * le * cross(ak, al) + 8.0 * le * S * (ric_deriv(cd, l, k) - ric_deriv(cd, k, l));
      Vec rhs = -S * S * S * cross(Vec::Unit(3, k), Vec::Unit(3, l));
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const double coeff = (i == k ? cd.ric(j, l) : 0.0) + (j == l ? cd.ric(i, k) : 0.0);
          if (coeff != 0.0)
            rhs += 2.0 * S * S * coeff * cross(Vec::Unit(3, i), Vec::Unit(3, j));
        }
      worst = std::max(worst, (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm()));
    }
  out.pair_identity = worst;

  worst = 0;
  for (int k = 0; k < 3; ++k) {
    const Vec rk = cd.ric.col(k);
    const Vec t1 = 8.0 * le * le * (S * rk - 2.0 * (cd.ric * rk));
    Vec dsum = Vec::Zero(3);
    for (int u = 0; u < 3; ++u) dsum += cross(Vec::Unit(3, u), ric_deriv(cd, k, u));
    const Vec t2 = -4.0 * le * S * dsum;
    const Vec t3 = -S * S * rk;
    worst = std::max(worst,
                     (t1 + t2 + t3).norm() / (1.0 + t1.norm() + t2.norm() + t3.norm()));
  }
  out.contracted_identity = worst;
  return out;
}

std::pair<double, double> sasakian3_scalar_equations(double scal, double lambda) {
  const double a = 32.0 * lambda * lambda;
  const double b = 8.0 * lambda * scal * (scal - 6.0);
  const double c = scal * scal * (scal - 4.0);
  const double e1 = (a + b - c) / (1.0 + std::abs(a) + std::abs(b) + std::abs(c));
  const double s3 = scal * scal * scal;
  const double rhs = 32.0 * lambda * lambda * (scal - 3.0);
  const double e2 = (s3 - rhs) / (1.0 + std::abs(s3) + std::abs(rhs));
  return {e1, e2};
}

std::array<double, 2> sasakian3_admissible_scal() {
  const double r5 = std::sqrt(5.0);
  return {1.0 + r5, 1.0 - r5};
}

double sasakian3_lambda(double scal) {
  const double l2 = scal * scal * scal / (32.0 * (scal - 3.0));
  if (!(l2 > 0))
    throw std::domain_error("sasakian3_lambda: no real eigenvalue at this scalar curvature");
  const double l = std::sqrt(l2);
  auto first_eq = [scal](double lam) {
    return std::abs(32.0 * lam * lam + 8.0 * lam * scal * (scal - 6.0) -
                    scal * scal * (scal - 4.0));
  };
  return first_eq(l) <= first_eq(-l) ? l : -l;
}

// ---- obstruction scan ----

namespace {

struct ModelStats {
  int n = 0;
  double s_mean = 0, s_dev = 0, s_absmax = 0;
  double ric2_mean = 0, ric2_dev = 0, ric2_max = 0;
  double einstein_defect = 0;
  double ric_parallel_defect = std::numeric_limits<double>::infinity();
  bool derivatives = false;
  std::vector<CurvatureData> cds;
};

ModelStats collect(const FrameModel& m, int samples, uint64_t seed) {
  FrameModel mm = m;
  ensure_chart(mm);
  ModelStats st;
  st.n = m.dim;
  for (const Vec& x : sample_points(mm, samples, seed)) st.cds.push_back(curvature(mm, x));
  double s_sum = 0, r_sum = 0;
  st.derivatives = true;
  for (const CurvatureData& cd : st.cds) {
    s_sum += cd.scal;
    r_sum += cd.ric_norm2;
    st.s_absmax = std::max(st.s_absmax, std::abs(cd.scal));
    st.ric2_max = std::max(st.ric2_max, cd.ric_norm2);
    const Mat defect = cd.ric - (cd.scal / st.n) * Mat::Identity(st.n, st.n);
    st.einstein_defect = std::max(st.einstein_defect, defect.cwiseAbs().maxCoeff());
    st.derivatives = st.derivatives && cd.has_derivatives;
  }
  st.s_mean = s_sum / st.cds.size();
  st.ric2_mean = r_sum / st.cds.size();
  for (const CurvatureData& cd : st.cds) {
    st.s_dev = std::max(st.s_dev, std::abs(cd.scal - st.s_mean));
    st.ric2_dev = std::max(st.ric2_dev, std::abs(cd.ric_norm2 - st.ric2_mean));
  }
  if (st.derivatives) {
    st.ric_parallel_defect = 0;
    for (const CurvatureData& cd : st.cds)
      st.ric_parallel_defect = std::max(st.ric_parallel_defect, cd.ric_cov.max_abs());
  }
  return st;
}

}  // namespace

bool ObstructionScan::any_triggered() const {
  for (const ObstructionCheck& c : checks)
    if (c.triggered) return true;
  return false;
}

std::vector<std::string> ObstructionScan::triggered_claims() const {
  std::vector<std::string> out;
  for (const ObstructionCheck& c : checks)
    if (c.triggered && (out.empty() || out.back() != c.claim)) out.push_back(c.claim);
  return out;
}

ObstructionScan obstruction_scan(const FrameModel& m, int samples, uint64_t seed, double tol) {
  ObstructionScan scan;
  scan.model = m.name;
  const ModelStats st = collect(m, samples, seed);
  const int n = st.n;
  const double nn = n;
  const double s_scale = std::max(1.0, std::abs(st.s_mean));
  const bool s_const = st.s_dev <= tol * s_scale;
  const bool s_zero = st.s_absmax <= tol;
  const bool s_nonzero_const = s_const && !s_zero;
  const bool ric2_const = st.ric2_dev <= tol * std::max(1.0, st.ric2_mean);
  const bool einstein = st.einstein_defect <= tol * s_scale;
  const bool ric_parallel = st.derivatives && st.ric_parallel_defect <= tol * s_scale;
  const double violation = std::max(1e4 * tol, 1e-8);  // identity-violation margin
  const double S = st.s_mean;
  const double r2 = st.ric2_mean;

  auto push = [&](const char* id, const char* claim, bool applicable, bool trig, double evidence,
                  std::string note) {
    ObstructionCheck c;
    c.id = id;
    c.claim = claim;
    c.applicable = applicable;
    c.triggered = applicable && trig;
    c.evidence = evidence;
    c.note = std::move(note);
    scan.checks.push_back(std::move(c));
  };

  // 1. the defining equation divides by S
  push("scalar-vanishes", "Section 3", true, s_zero, st.s_absmax,
       s_zero ? "S vanishes at every sample; the equation is undefined"
              : "S attains nonzero values");

  // 2. sign and degeneracy of the closed form for lambda^2 at constant S
  {
    bool trig = false;
    double ev = 0;
    std::string note;
    if (s_nonzero_const) {
      if (!ric2_const) {
        trig = true;
        ev = st.ric2_dev;
        note = "constant S forces constant |Ric|^2 through the scalar identity";
      } else {
        const double denom = (nn * nn - 5 * nn + 8) * S * S - 4.0 * r2;
        if (std::abs(denom) <= std::max(tol, 1e-9) * S * S) {
          trig = true;
          ev = std::abs(S * S * S);
          note = "the scalar identity degenerates to 0 = S^3 != 0";
        } else {
          const double lam2 = 0.25 * (nn - 2) * (nn - 2) * S * S * S / denom;
          trig = lam2 < 0;
          ev = lam2;
          note = trig ? "the closed form gives lambda^2 < 0"
                      : "predicted lambda^2 from the scalar identity";
        }
      }
    }
    push("scalar-form-sign", "Theorem 4.2", s_nonzero_const, trig, ev, note);
  }

  // 3. compact pinching
  {
    const bool applicable = m.compact && s_nonzero_const && S > 0;
    double margin = std::numeric_limits<double>::infinity();
    for (const CurvatureData& cd : st.cds)
      margin = std::min(margin, 4.0 * cd.ric_norm2 -
                                    (nn * nn - 5 * nn + 8) * cd.scal * cd.scal);
    if (!applicable) margin = 0;
    push("compact-pinching", "Theorem 4.3", applicable, margin >= -tol * s_scale * s_scale,
         margin, applicable ? "4|Ric|^2 - (n^2-5n+8) S^2 minimized over the samples" : "");
  }

  // 4. polynomial identities under conformal flatness / parallel Ricci
  {
    const bool applicable = (m.conformally_flat || ric_parallel) && s_nonzero_const;
    double res = 0;
    if (applicable) {
      for (const CurvatureData& cd : st.cds) {
        const double Si = cd.scal;
        const Mat poly = 4.0 * Si * cd.ric * cd.ric +
                         ((nn * (nn - 3)) * Si * Si - 4.0 * cd.ric_norm2) * cd.ric -
                         (nn - 3) * Si * Si * Si * Mat::Identity(n, n);
        const double scale1 = 1.0 + 4.0 * std::abs(Si) * cd.ric_norm2 +
                              std::abs(Si * Si * Si) * (nn - 2);
        res = std::max(res, poly.cwiseAbs().maxCoeff() / scale1);
        const double t1 = 4.0 * cd.ric_norm2 * cd.ric_norm2;
        const double t2 = -4.0 * Si * cd.trace_ric3;
        const double t3 = -nn * (nn - 3) * Si * Si * cd.ric_norm2;
        const double t4 = (nn - 3) * Si * Si * Si * Si;
        res = std::max(res, std::abs(t1 + t2 + t3 + t4) / (1.0 + std::abs(t1) + std::abs(t2) +
                                                           std::abs(t3) + std::abs(t4)));
      }
    }
    push("ricci-polynomial", "Theorem 4.5", applicable, res > violation, res,
         applicable ? (m.conformally_flat ? "conformally flat hypothesis"
                                          : "parallel Ricci verified on the samples")
                    : "");
  }

  // 5. conformally flat with parallel Ricci in dimension >= 4: positive
  //    Einstein, or the negative branch with pinned |Ric|^2
  {
    const bool applicable =
        n >= 4 && m.conformally_flat && ric_parallel && s_nonzero_const;
    bool trig = false;
    double ev = 0;
    std::string note;
    if (applicable) {
      if (S > 0) {
        trig = !einstein;
        ev = st.einstein_defect;
        note = trig ? "positive branch is not Einstein" : "Einstein as required";
      } else {
        const double pinned =
            (nn * nn * nn - 4 * nn * nn + 3 * nn + 4) * S * S / (4.0 * (nn - 1));
        ev = std::abs(r2 - pinned);
        trig = ev > violation * std::max(1.0, pinned);
        note = trig ? "negative branch misses the pinned |Ric|^2"
                    : "|Ric|^2 sits at the pinned value";
      }
    }
    push("ricci-parallel-structure", "Theorem 4.9", applicable, trig, ev, note);
  }

  // 6. parallel unit one-form
  push("parallel-one-form", "Theorem 4.11", m.parallel_one_form && s_nonzero_const && n >= 3,
       true, st.s_dev,
       m.parallel_one_form ? "parallel direction supplied by the product structure" : "");

  // product-only criteria
  bool prod = m.is_product() && m.factors.size() == 2;
  ModelStats fa, fb;
  if (prod) {
    fa = collect(m.factors[0], std::max(4, samples / 2), seed + 1);
    fb = collect(m.factors[1], std::max(4, samples / 2), seed + 2);
  }
  auto fconst = [&](const ModelStats& f) {
    return f.s_dev <= tol * std::max(1.0, std::abs(f.s_mean));
  };
  auto fzero = [&](const ModelStats& f) { return f.s_absmax <= tol; };
  auto fein = [&](const ModelStats& f) {
    return f.einstein_defect <= tol * std::max(1.0, std::abs(f.s_mean));
  };
  auto fflat = [&](const ModelStats& f) { return fzero(f) && f.ric2_max <= tol; };
  const double total = prod ? fa.s_mean + fb.s_mean : 0;

  // 6. both factors non-Einstein
  {
    bool applicable = prod && fa.n >= 3 && fb.n >= 3 && fconst(fa) && fconst(fb) &&
                      !fzero(fa) && !fzero(fb) && !fein(fa) && !fein(fb) &&
                      std::abs(total) > tol;
    push("product-both-noneinstein", "Theorem 4.12", applicable, true,
         applicable ? std::min(fa.einstein_defect, fb.einstein_defect) : 0,
         applicable ? "constant nonzero factor curvatures, both factors non-Einstein" : "");
  }

  // 7. one factor scalar-flat
  {
    bool ab = prod && fa.n >= 3 && fconst(fa) && !fzero(fa) && fzero(fb);
    bool ba = prod && fb.n >= 3 && fconst(fb) && !fzero(fb) && fzero(fa);
    push("product-flat-factor", "Theorem 4.13", ab || ba, true,
         ab ? fb.s_absmax : (ba ? fa.s_absmax : 0),
         (ab || ba) ? "scalar-flat factor against a constant-curvature factor" : "");
  }

  // 8. both factors Einstein: the two linear conditions
  {
    bool applicable = prod && fa.n >= 3 && fb.n >= 3 && fconst(fa) && fconst(fb) &&
                      !fzero(fa) && !fzero(fb) && fein(fa) && fein(fb) &&
                      std::abs(total) > tol;
    double ev = 0;
    std::string note;
    bool trig = false;
    if (applicable) {
      const double c1 = (fa.n - 2.0) * fa.s_mean + fa.n * fb.s_mean;
      const double c2 = fb.n * fa.s_mean + (fb.n - 2.0) * fb.s_mean;
      ev = std::min(std::abs(c1), std::abs(c2));
      trig = ev > tol * std::max(1.0, std::abs(fa.s_mean) + std::abs(fb.s_mean));
      note = trig ? "both admissibility combinations are nonzero"
                  : "one admissibility combination vanishes; not excluded";
    }
    push("product-both-einstein", "Theorem 4.14", applicable, trig, ev, note);
  }

  // 9. Einstein against non-Einstein factor
  {
    bool trig = false, applicable = false;
    double ev = 0;
    for (int swap = 0; swap < 2 && prod; ++swap) {
      const ModelStats& M = swap ? fb : fa;
      const ModelStats& N = swap ? fa : fb;
      if (M.n >= 3 && N.n >= 3 && fconst(M) && fconst(N) && !fzero(M) && !fzero(N) &&
          fein(M) && !fein(N) && std::abs(total) > tol) {
        applicable = true;
        const double c1 = (M.n - 2.0) * M.s_mean + M.n * N.s_mean;
        ev = std::abs(c1);
        trig = ev > tol * std::max(1.0, std::abs(M.s_mean) + std::abs(N.s_mean));
      }
    }
    push("product-mixed", "Theorem 4.15", applicable, trig, ev,
         applicable ? "Einstein factor against a non-Einstein constant-curvature factor" : "");
  }

  // 10. the four excluded positive-curvature product families
  {
    std::string which;
    if (prod) {
      auto pos_ein = [&](const ModelStats& f) { return f.n >= 3 && fein(f) && fconst(f) && f.s_mean > tol; };
      auto sphere2 = [&](const ModelStats& f) { return f.n == 2 && fconst(f) && f.s_mean > tol; };
      auto flat = [&](const ModelStats& f) { return fflat(f); };
      auto ein_any = [&](const ModelStats& f) {
        return f.n >= 3 && fein(f) && fconst(f) && !fzero(f);
      };
      if (pos_ein(fa) && pos_ein(fb)) which = "two positive Einstein factors";
      else if ((pos_ein(fa) && sphere2(fb)) || (pos_ein(fb) && sphere2(fa)))
        which = "positive Einstein factor against a 2-sphere";
      else if (sphere2(fa) && sphere2(fb)) which = "product of two 2-spheres";
      else if ((ein_any(fa) && flat(fb)) || (ein_any(fb) && flat(fa)))
        which = "Einstein factor against a flat torus";
    }
    double ev = 0;
    if (!which.empty()) {
      const CurvatureData& cd = st.cds.front();
      ev = std::abs(4.0 * cd.ric_norm2 * cd.ric_norm2 - 4.0 * cd.scal * cd.trace_ric3 -
                    nn * (nn - 3) * cd.scal * cd.scal * cd.ric_norm2 +
                    (nn - 3) * std::pow(cd.scal, 4));
    }
    push("product-positive-einstein", "Corollary 4.6", !which.empty(), true, ev, which);
  }

  // 11. |Ric|^2 must be constant in dimension 3
  push("ricci-norm-constancy", "Proposition 8.1", n == 3 && s_nonzero_const, !ric2_const,
       st.ric2_dev, n == 3 && s_nonzero_const ? "spread of |Ric|^2 over the samples" : "");

  // 12. conformally flat 3-geometry: positive Einstein or nothing
  {
    const bool applicable = n == 3 && m.conformally_flat && s_nonzero_const;
    const bool trig = S < 0 || !einstein;
    std::string note;
    if (applicable && trig)
      note = (S < 0 && einstein)
                 ? "Einstein with S < 0: eigenvalues sit in the imaginary range"
                 : (S < 0 ? "negative scalar curvature" : "not Einstein");
    push("conformally-flat-3d", "Theorem 8.2", applicable, trig,
         applicable ? (S < 0 ? S : st.einstein_defect) : 0, note);
  }

  // 13. 3-dimensional Sasakian scalar curvature values
  {
    const bool applicable = n == 3 && m.sasaki_xi >= 0 && s_nonzero_const;
    double dmin = 0;
    if (applicable) {
      const double r5 = std::sqrt(5.0);
      dmin = std::min({std::abs(S - 6.0), std::abs(S - (1.0 + r5)), std::abs(S - (1.0 - r5))});
    }
    push("sasakian-scalar", "Corollary 8.4", applicable, dmin > tol * s_scale, dmin,
         applicable ? "distance of S to the admissible set {6, 1+sqrt5, 1-sqrt5}" : "");
  }

  return scan;
}

SolNonexistence sol_wk_nonexistence(int lambda_steps, int spinor_steps) {
  FrameModel sol = catalog("sol");
  GeometryContext ctx = make_context(sol, +1);
  const CMat M2 = vector_action(ctx.rep, Vec::Unit(3, 2));
  const std::vector<Vec> pts = sample_points(ctx.model, 4, 7);

  SolNonexistence out;
  out.sweep_min = std::numeric_limits<double>::infinity();
  const double lo = 0.05, hi = 5.0;
  for (int i = 0; i < lambda_steps; ++i) {
    const double mag =
        lambda_steps == 1 ? lo : lo * std::pow(hi / lo, i / (lambda_steps - 1.0));
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      const double lam = sgn * mag;
      EquationSpec eq;
      eq.kind = EquationKind::WeakKilling;
      eq.lambda = lam;
      double best = std::numeric_limits<double>::infinity();
      for (int a = 0; a < spinor_steps; ++a)
        for (int b = 0; b < spinor_steps; ++b) {
          const double th = M_PI * (a + 0.5) / spinor_steps;
          const double ph = 2.0 * M_PI * b / spinor_steps;
          CVec psi0(2);
          psi0 << std::cos(0.5 * th), std::exp(cplx(0, ph)) * std::sin(0.5 * th);
          SpinorField f;
          f.spinor_dim = 2;
          f.eval = [lam, M2, psi0](const Vec& x) -> CVec {
            const double t = lam * x(2);
            return std::cos(t) * psi0 + std::sin(t) * (M2 * psi0);
          };
          f.partials = [lam, M2, psi0](const Vec& x) -> CMat {
            const double t = lam * x(2);
            CMat P = CMat::Zero(2, 3);
            P.col(2) = lam * (std::cos(t) * (M2 * psi0) - std::sin(t) * psi0);
            return P;
          };
          double worst = 0;
          for (const Vec& x : pts) worst = std::max(worst, equation_residual(ctx, f, eq, x));
          best = std::min(best, worst);
        }
      if (best < out.sweep_min) {
        out.sweep_min = best;
        out.sweep_lambda = lam;
      }
    }
  }
  const double l = std::abs(out.sweep_lambda);
  out.closed_form_floor = std::sqrt(l * l + 0.25) / (1.5 + l);
  out.nonexistent = out.sweep_min > 0.01;
  return out;
}

Vec wk_unit_vector(const CliffordRep& rep, const CVec& psi) {
  if (rep.n != 3) throw std::invalid_argument("wk_unit_vector: three-dimensional only");
  const double q = psi.squaredNorm();
  if (q < 1e-14) throw std::domain_error("wk_unit_vector: vanishing spinor");
  Vec xi(3);
  for (int u = 0; u < 3; ++u) xi(u) = -std::imag(herm(psi, rep.gen[u] * psi)) / q;
  return xi;
}

WkVectorReport wk_vector_report(const GeometryContext& ctx, const SpinorField& f, double lambda,
                                const Vec& x) {
  if (ctx.model.dim != 3)
    throw std::invalid_argument("wk_vector_report: three-dimensional only");
  const double c = ctx.rep.chirality;
  const CurvatureData cd = curvature(ctx.model, x, ctx.path);
  const double S = cd.scal;
  if (std::abs(S) < 1e-12) throw std::domain_error("wk_vector_report: scalar curvature vanishes");

  WkVectorReport out;
  const Vec xi = wk_unit_vector(ctx.rep, f.eval(x));
  out.unit_residual = std::abs(xi.norm() - 1.0);

  const Tensor3 gam = christoffel(ctx.model, x, ctx.path).gamma;
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    Vec nk(3);
    for (int w = 0; w < 3; ++w) {
      auto comp = [&](const Vec& y) { return wk_unit_vector(ctx.rep, f.eval(y))(w); };
      double v = frame_scalar_derivative(ctx, comp, x, k);
      for (int vv = 0; vv < 3; ++vv) v += gam(w, k, vv) * xi(vv);
      nk(w) = v;
    }
    const Vec A = (2.0 * lambda / S) * cd.ric.col(k) - lambda * Vec::Unit(3, k) +
                  (c / (4.0 * S)) * cross(cd.grad_s, Vec::Unit(3, k));
    const Vec rhs = 2.0 * c * cross(xi, A);
    worst = std::max(worst, (nk - rhs).norm() / (1.0 + rhs.norm()));
  }
  out.derivative_residual = worst;

  const double denom = S * S - 2.0 * cd.ric_norm2;
  if (std::abs(denom) > 1e-10 * std::max(1.0, S * S)) {
    const double c2 = S * S * S / (2.0 * denom);
    if (c2 >= 0) out.corollary_coefficient = std::sqrt(c2);
  }
  return out;
}

SpinorField conformal_wk_field(double c, int vsign, double rho) {
  if (vsign != 1 && vsign != -1)
    throw std::invalid_argument("conformal_wk_field: vsign must be +-1");
  const double s = vsign;
  SpinorField f;
  f.spinor_dim = 2;
  f.eval = [c, s, rho](const Vec& x) -> CVec {
    const double t = std::exp(-c * x(2));
    const double e = std::exp(c * x(2));
    CVec p(2);
    p(0) = rho * e * cplx(std::sin(t), std::cos(t));
    p(1) = s * rho * e * cplx(std::cos(t), -std::sin(t));
    return p;
  };
  f.partials = [c, s, rho](const Vec& x) -> CMat {
    const double t = std::exp(-c * x(2));
    const double e = std::exp(c * x(2));
    const cplx u = rho * e * cplx(std::sin(t), std::cos(t));
    const cplx v = s * rho * e * cplx(std::cos(t), -std::sin(t));
    CMat P = CMat::Zero(2, 3);
    P(0, 2) = c * u - c * rho * cplx(std::cos(t), -std::sin(t));
    P(1, 2) = c * v + s * c * rho * cplx(std::sin(t), std::cos(t));
    return P;
  };
  return f;
}

SpinorField sphere_killing_field(const CliffordRep& rep, double kappa, double b,
                                 const CVec& psi0) {
  const int n = rep.n;
  const int d = rep.spinor_dim();
  if (psi0.size() != d)
    throw std::invalid_argument("sphere_killing_field: spinor dimension mismatch");
  const std::vector<CMat> gen = rep.gen;
  auto poly = [gen, b, psi0, n](const Vec& x) -> CVec {
    CVec p = psi0;
    for (int a = 0; a < n; ++a) p += b * x(a) * (gen[a] * psi0);
    return p;
  };
  SpinorField f;
  f.spinor_dim = d;
  f.eval = [poly, kappa](const Vec& x) -> CVec {
    const double u = 1.0 + 0.25 * kappa * x.squaredNorm();
    return std::pow(u, -0.5) * poly(x);
  };
  f.partials = [poly, gen, kappa, b, psi0, n, d](const Vec& x) -> CMat {
    const double u = 1.0 + 0.25 * kappa * x.squaredNorm();
    const CVec p = poly(x);
    CMat P(d, n);
    for (int a = 0; a < n; ++a)
      P.col(a) = -0.25 * kappa * x(a) * std::pow(u, -1.5) * p +
                 std::pow(u, -0.5) * b * (gen[a] * psi0);
    return P;
  };
  return f;
}

EinsteinDiracNormalization einstein_dirac_normalization(int n, double scal, double lambda) {
  if (n < 3 || std::abs(scal) < 1e-14 || std::abs(lambda) < 1e-14)
    throw std::invalid_argument("einstein_dirac_normalization: degenerate data");
  EinsteinDiracNormalization out;
  out.norm2 = (n - 2.0) * std::abs(scal) / std::abs(lambda);
  out.eps = (lambda * scal > 0) ? -1.0 : 1.0;
  return out;
}

}  // namespace spinwork

#include "spinwork/contact_sasakian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinwork/spin_connection.hpp"

namespace spinwork {

namespace {

double binom(int m, int r) {
  double v = 1;
  for (int i = 0; i < r; ++i) v = v * (m - i) / (i + 1);
  return v;
}

int reeb_index(int n) { return n - 1; }

void require_odd_dim(int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("contact structure needs odd dimension >= 3");
}

bool is_adapted(const Mat& phi, int xi, const Vec& eta, double tol = 1e-9) {
  const int n = static_cast<int>(phi.rows());
  if (xi != n - 1) return false;
  if ((phi - adapted_phi(n)).cwiseAbs().maxCoeff() > tol) return false;
  Vec e = Vec::Zero(n);
  e(xi) = 1;
  return (eta - e).cwiseAbs().maxCoeff() <= tol;
}

double frob(const CMat& M) { return M.cwiseAbs().maxCoeff(); }

// -(1/2) sum_{p<q} R(p,q,u,v) E_p E_q, the spinor curvature matrix of the
// plane (u,v).
CMat spin_curvature_matrix(const CliffordRep& rep, const CurvatureData& cd, int u, int v) {
  const int n = rep.n;
  CMat M = CMat::Zero(rep.spinor_dim(), rep.spinor_dim());
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      double c = cd.R(p, q, u, v);
      if (c != 0.0) M -= 0.5 * c * (rep.gen[p] * rep.gen[q]);
    }
  return M;
}

}  // namespace

Mat adapted_phi(int n) {
  require_odd_dim(n);
  Mat phi = Mat::Zero(n, n);
  for (int k = 0; 2 * k + 1 < n; ++k) {
    phi(2 * k + 1, 2 * k) = 1.0;
    phi(2 * k, 2 * k + 1) = -1.0;
  }
  return phi;
}

AlmostContactStructure standard_contact_structure(const FrameModel& model) {
  require_odd_dim(model.dim);
  if (model.sasaki_xi < 0)
    throw std::invalid_argument(model.name + ": model carries no Reeb index");
  if (model.sasaki_xi != model.dim - 1)
    throw std::invalid_argument(model.name + ": frame not adapted (Reeb vector not last)");
  AlmostContactStructure s;
  s.model = model;
  s.phi = adapted_phi(model.dim);
  s.xi = model.sasaki_xi;
  s.eta = Vec::Zero(model.dim);
  s.eta(s.xi) = 1.0;
  return s;
}

double almost_contact_invariants(const AlmostContactStructure& s) {
  const int n = static_cast<int>(s.phi.rows());
  Vec xivec = Vec::Zero(n);
  xivec(s.xi) = 1.0;
  double r = std::abs(s.eta(s.xi) - 1.0);
  Mat sq = s.phi * s.phi + Mat::Identity(n, n) - xivec * s.eta.transpose();
  r = std::max(r, sq.cwiseAbs().maxCoeff());
  Mat comp = s.phi.transpose() * s.phi - Mat::Identity(n, n) + s.eta * s.eta.transpose();
  return std::max(r, comp.cwiseAbs().maxCoeff());
}

FrameForm fundamental_form(const Mat& phi) {
  const int n = static_cast<int>(phi.rows());
  FrameForm w;
  w.degree = 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (phi(i, j) != 0.0) w.terms.push_back({{i, j}, phi(i, j)});
  return w;
}

double SasakianVerifyReport::max() const {
  return std::max({invariants, defining, reeb, fundamental_deriv, christoffel});
}

SasakianVerifyReport verify_sasakian(const AlmostContactStructure& s, int samples,
                                     uint64_t seed) {
  const int n = s.model.dim;
  const int m = s.m();
  const int xi = reeb_index(n);
  if (!is_adapted(s.phi, s.xi, s.eta))
    throw std::invalid_argument(s.model.name + ": frame not adapted");

  SasakianVerifyReport rep;
  rep.invariants = almost_contact_invariants(s);

  FrameModel model = s.model;
  ensure_chart(model);
  std::vector<Vec> pts = sample_points(model, samples, seed);
  pts.push_back(Vec::Zero(n));

  Vec xivec = Vec::Zero(n);
  xivec(xi) = 1.0;
  for (const Vec& x : pts) {
    const Tensor3& g = christoffel(model, x).gamma;
    // (nabla_k phi)(E_j) = g(E_k,E_j) xi - eta(E_j) E_k, phi frame-constant
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double d = 0;
          for (int u = 0; u < n; ++u) d += g(i, k, u) * s.phi(u, j) - s.phi(i, u) * g(u, k, j);
          double target = (k == j ? xivec(i) : 0.0) - s.eta(j) * (i == k ? 1.0 : 0.0);
          rep.defining = std::max(rep.defining, std::abs(d - target));
        }
    // nabla_k xi = -phi(E_k)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        rep.reeb = std::max(rep.reeb, std::abs(g(i, k, xi) + s.phi(i, k)));
    // (nabla_k Phi)(E_i,E_j) = eta_i delta_kj - eta_j delta_ki
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double d = 0;
          for (int u = 0; u < n; ++u) d -= g(u, k, i) * s.phi(u, j) + g(u, k, j) * s.phi(i, u);
          double target = s.eta(i) * (k == j ? 1.0 : 0.0) - s.eta(j) * (k == i ? 1.0 : 0.0);
          rep.fundamental_deriv = std::max(rep.fundamental_deriv, std::abs(d - target));
        }
    // adapted-frame Christoffel pattern
    double c = 0;
    for (int u = 0; u < n; ++u)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          c = std::max(c, std::abs(g(2 * i + 1, u, 2 * j + 1) - g(2 * i, u, 2 * j)));
          c = std::max(c, std::abs(g(2 * i, u, 2 * j + 1) + g(2 * i + 1, u, 2 * j)));
        }
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) {
        double d = (i == k) ? 1.0 : 0.0;
        c = std::max(c, std::abs(g(2 * i, 2 * k + 1, xi) - d));
        c = std::max(c, std::abs(g(2 * i + 1, 2 * k, xi) + d));
        c = std::max(c, std::abs(g(2 * i, 2 * k, xi)));
        c = std::max(c, std::abs(g(2 * i + 1, 2 * k + 1, xi)));
      }
      c = std::max(c, std::abs(g(2 * i, xi, xi)));
      c = std::max(c, std::abs(g(2 * i + 1, xi, xi)));
    }
    rep.christoffel = std::max(rep.christoffel, c);
  }
  return rep;
}

SasakianDecomposition decompose(const CliffordRep& rep, const FrameForm& fundamental) {
  const int n = rep.n;
  require_odd_dim(n);
  if (fundamental.degree != 2)
    throw std::invalid_argument("fundamental form must have degree 2");
  const int m = (n - 1) / 2;
  const int xi = reeb_index(n);
  const int d = rep.spinor_dim();

  SasakianDecomposition dec;
  dec.m = m;
  dec.phi = Mat::Zero(n, n);
  for (const auto& t : fundamental.terms) {
    dec.phi(t.first[0], t.first[1]) = t.second;
    dec.phi(t.first[1], t.first[0]) = -t.second;
  }
  if (dec.phi.col(xi).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("fundamental form not adapted: Reeb leg not annihilated");
  dec.eta = Vec::Zero(n);
  dec.eta(xi) = 1.0;
  dec.phi_action = form_action(rep, fundamental);

  // spectrum check before building projectors
  Eigen::ComplexEigenSolver<CMat> es(dec.phi_action);
  std::vector<int> counts(m + 1, 0);
  for (int k = 0; k < d; ++k) {
    cplx ev = es.eigenvalues()(k);
    int best = 0;
    double dist = std::abs(ev - I * static_cast<double>(-m));
    for (int r = 1; r <= m; ++r) {
      double dr = std::abs(ev - I * static_cast<double>(2 * r - m));
      if (dr < dist) dist = dr, best = r;
    }
    if (dist > 1e-7) {
      std::ostringstream os;
      os << "fundamental form spectrum mismatch: eigenvalue " << ev.real() << " + "
         << ev.imag() << "i not of the form i(2r-m)";
      throw std::runtime_error(os.str());
    }
    ++counts[best];
  }
  for (int r = 0; r <= m; ++r)
    if (counts[r] != static_cast<int>(binom(m, r) + 0.5)) {
      std::ostringstream os;
      os << "eigenvalue i*" << (2 * r - m) << " has multiplicity " << counts[r]
         << ", expected C(" << m << "," << r << ")";
      throw std::runtime_error(os.str());
    }

  // exact polynomial projectors onto the i(2r-m) eigenspaces
  for (int r = 0; r <= m; ++r) {
    CMat P = CMat::Identity(d, d);
    for (int s = 0; s <= m; ++s) {
      if (s == r) continue;
      P = P * (dec.phi_action - I * static_cast<double>(2 * s - m) * CMat::Identity(d, d)) /
          (I * static_cast<double>(2 * r - 2 * s));
    }
    dec.projectors.push_back(P);
    dec.dims.push_back(static_cast<int>(std::round(P.trace().real())));
  }

  double pr = 0;
  CMat sum = CMat::Zero(d, d);
  for (int r = 0; r <= m; ++r) {
    const CMat& P = dec.projectors[r];
    sum += P;
    pr = std::max(pr, frob(P * P - P));
    pr = std::max(pr, frob(P - P.adjoint().eval()));
    for (int s = r + 1; s <= m; ++s) pr = std::max(pr, frob(P * dec.projectors[s]));
  }
  pr = std::max(pr, frob(sum - CMat::Identity(d, d)));
  dec.projector_residual = pr;

  // Reeb action is the scalar (-1)^r (-1)^m i on Sigma_r
  const CMat& xact = rep.gen[xi];
  for (int r = 0; r <= m; ++r) {
    cplx want = ((r + m) % 2 == 0 ? 1.0 : -1.0) * I;
    double res = frob(xact * dec.projectors[r] - want * dec.projectors[r]);
    dec.reeb_sign_residual = std::max(dec.reeb_sign_residual, res);
    if (res > 1e-6) {
      std::ostringstream os;
      os << "Reeb action mirrored on the eigenvalue-i*" << (2 * r - m)
         << " space: expected " << want.imag()
         << "i (wrong chirality or fundamental-form sign)";
      throw std::runtime_error(os.str());
    }
  }

  // defining equations of the extreme eigenspaces
  double ex = 0;
  double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    CMat pk = vector_action(rep, dec.phi.col(k));
    CMat ak = rep.gen[k];
    CMat lo = pk + I * ak + sgn * dec.eta(k) * CMat::Identity(d, d);
    CMat hi = pk - I * ak - dec.eta(k) * CMat::Identity(d, d);
    ex = std::max(ex, frob(lo * dec.projectors[0]));
    ex = std::max(ex, frob(hi * dec.projectors[m]));
  }
  dec.extreme_residual = ex;
  return dec;
}

double SasakianAlgebraReport::max() const {
  return std::max({ricci_contractions, curvature_reflections, reeb_planes, commutator,
                   fundamental_action, extreme_products});
}

SasakianAlgebraReport check_sasakian_algebra(const CliffordRep& rep,
                                             const SasakianDecomposition& dec,
                                             const CurvatureData& cd) {
  const int m = dec.m;
  const int n = 2 * m + 1;
  const int xi = reeb_index(n);
  if (rep.n != n || cd.ric.rows() != n)
    throw std::invalid_argument("dimension mismatch between rep, decomposition and curvature");
  const int d = rep.spinor_dim();
  auto un = [](int i) { return 2 * i; };
  auto br = [](int i) { return 2 * i + 1; };

  SasakianAlgebraReport out;

  // Ricci rows from transverse curvature sums
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) {
      double s1 = 0, s2 = 0;
      for (int i = 0; i < m; ++i) {
        s1 += cd.R(un(i), br(i), un(j), br(l));
        s2 += cd.R(un(i), br(i), un(j), un(l));
      }
      double dia = (j == l) ? 2.0 * m - 1.0 : 0.0;
      out.ricci_contractions = std::max(
          {out.ricci_contractions, std::abs(cd.ric(un(j), un(l)) - s1 - dia),
           std::abs(cd.ric(br(j), br(l)) - s1 - dia), std::abs(cd.ric(un(j), br(l)) + s2),
           std::abs(cd.ric(br(j), un(l)) - s2)});
    }
  out.ricci_contractions =
      std::max(out.ricci_contractions, std::abs(cd.ric(xi, xi) - 2.0 * m));
  for (int t = 0; t < xi; ++t)
    out.ricci_contractions = std::max({out.ricci_contractions, std::abs(cd.ric(t, xi)),
                                       std::abs(cd.ric(xi, t))});

  // reflection symmetries through the pairing
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double r = std::abs(cd.R(br(i), br(j), br(k), br(l)) - cd.R(un(i), un(j), un(k), un(l)));
          r = std::max(r, std::abs(cd.R(un(i), un(j), br(k), br(l)) -
                                   cd.R(br(i), br(j), un(k), un(l))));
          r = std::max(r, std::abs(cd.R(un(i), br(j), un(k), br(l)) -
                                   cd.R(br(i), un(j), br(k), un(l))));
          r = std::max(r, std::abs(cd.R(un(i), br(j), br(k), br(l)) +
                                   cd.R(br(i), un(j), un(k), un(l))));
          r = std::max(r, std::abs(cd.R(br(i), br(j), un(k), br(l)) +
                                   cd.R(un(i), un(j), br(k), un(l))));
          out.curvature_reflections = std::max(out.curvature_reflections, r);
        }

  // components touching the Reeb leg
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (i != xi && j != xi && k != xi && l != xi) continue;
          double want = 0;
          if (j == xi && l == xi && i != xi && k != xi && i == k) want += 1;
          if (i == xi && k == xi && j != xi && l != xi && j == l) want += 1;
          if (j == xi && k == xi && i != xi && l != xi && i == l) want -= 1;
          if (i == xi && l == xi && j != xi && k != xi && j == k) want -= 1;
          out.reeb_planes = std::max(out.reeb_planes, std::abs(cd.R(i, j, k, l) - want));
        }

  // X Phi - Phi X = 2 phi(X)
  for (int k = 0; k < n; ++k) {
    CMat c = rep.gen[k] * dec.phi_action - dec.phi_action * rep.gen[k] -
             2.0 * vector_action(rep, dec.phi.col(k));
    out.commutator = std::max(out.commutator, frob(c));
  }

  // (nabla_X Phi) psi = -X xi psi - eta(X) psi with the Sasakian closed form
  // of nabla Phi
  for (int k = 0; k < n; ++k) {
    CMat M = CMat::Zero(d, d);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double c = dec.eta(i) * (k == j ? 1.0 : 0.0) - dec.eta(j) * (k == i ? 1.0 : 0.0);
        if (c != 0.0) M += c * (rep.gen[i] * rep.gen[j]);
      }
    M += rep.gen[k] * rep.gen[xi] + dec.eta(k) * CMat::Identity(d, d);
    out.fundamental_action = std::max(out.fundamental_action, frob(M));
  }

  // vanishing second-degree products between extreme sections
  if (m >= 2) {
    std::vector<CMat> ops;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        ops.push_back(rep.gen[un(p)] * rep.gen[un(q)]);
        ops.push_back(rep.gen[br(p)] * rep.gen[br(q)]);
      }
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        if (p == q) continue;
        ops.push_back(rep.gen[un(p)] * rep.gen[br(q)]);
        ops.push_back(rep.gen[br(p)] * rep.gen[un(q)]);
      }
    for (int r = 0; r < m; ++r) {
      ops.push_back(rep.gen[un(r)] * rep.gen[xi]);
      ops.push_back(rep.gen[br(r)] * rep.gen[xi]);
    }
    if (m >= 3) {
      CMat P = dec.projectors[0] + dec.projectors[m];
      for (const CMat& A : ops)
        out.extreme_products = std::max(out.extreme_products, frob(P * A * P));
    } else {
      for (const CMat& A : ops)
        out.extreme_products = std::max(
            {out.extreme_products, frob(dec.projectors[0] * A * dec.projectors[0]),
             frob(dec.projectors[m] * A * dec.projectors[m])});
    }
  }
  return out;
}

QuasiKillingConsequences quasi_killing_consequences(double a, double b, int m,
                                                    const CurvatureData& cd,
                                                    const CliffordRep& rep, const CVec& psi,
                                                    double qk_residual) {
  if (qk_residual > 1e-6)
    throw std::invalid_argument("quasi-Killing residual precondition fails");
  const int n = 2 * m + 1;
  if (rep.n != n || cd.ric.rows() != n)
    throw std::invalid_argument("dimension mismatch");
  const int xi = reeb_index(n);
  Mat phi = adapted_phi(n);
  Vec eta = Vec::Zero(n);
  eta(xi) = 1.0;

  QuasiKillingConsequences out;
  double s_expected = 8.0 * m * (2 * m + 1) * a * a + 16.0 * m * a * b;
  out.scal_residual = std::abs(cd.scal - s_expected) / (1.0 + std::abs(s_expected));

  double c1 = 8.0 * m * a * a + 4.0 * a * b;
  double r2_expected =
      c1 * (16.0 * m * m * a * a + 16.0 * m * a * a + 24.0 * m * a * b - 4.0 * m) +
      8.0 * m * b * b + 4.0 * m * m;
  out.ric_norm2_residual = std::abs(cd.ric_norm2 - r2_expected) / (1.0 + std::abs(r2_expected));

  const double pn = 1.0 + psi.norm();
  const CMat xact = rep.gen[xi];
  for (int k = 0; k < n; ++k) {
    CVec lhs = vector_action(rep, cd.ric.col(k)) * psi;
    CVec rhs = c1 * (rep.gen[k] * psi) +
               2.0 * b * (vector_action(rep, phi.col(k)) * (xact * psi)) +
               (2.0 * m - c1) * eta(k) * (xact * psi);
    out.ricci_action = std::max(out.ricci_action, (lhs - rhs).norm() / pn);
  }

  CMat phi_act = form_action(rep, fundamental_form(phi));
  CVec lhs = 2.0 * b * (phi_act * psi);
  CVec rhs = m * (1.0 - 4.0 * a * a - 4.0 * a * b) * (xact * psi);
  out.fundamental_relation = (lhs - rhs).norm() / pn;

  if (std::abs(std::abs(a) - 0.5) < 1e-9) {
    double gc = (a > 0) ? 2.0 * m + 4.0 * b : 2.0 * m - 4.0 * b;
    double ec = (a > 0) ? -4.0 * b : 4.0 * b;
    Mat expect = gc * Mat::Identity(n, n) + ec * eta * eta.transpose();
    out.eta_einstein = (cd.ric - expect).cwiseAbs().maxCoeff();
  }

  if (m == 1) {
    double dist = 1e300;
    for (const auto& t : sasakian3_qk_types(cd.scal))
      dist = std::min(dist, std::max(std::abs(a - t.first), std::abs(b - t.second)));
    out.branch_distance = dist;
    out.on_branch = dist < 1e-8;
  }
  return out;
}

std::vector<std::pair<double, double>> sasakian3_qk_types(double scal) {
  std::vector<std::pair<double, double>> out;
  out.push_back({-0.5, 0.75 - scal / 8.0});
  double disc = 4.0 + 2.0 * scal;
  if (disc >= 0) {
    double r = std::sqrt(disc);
    out.push_back({(-2.0 - r) / 4.0, (4.0 + r) / 4.0});
    out.push_back({(-2.0 + r) / 4.0, (4.0 - r) / 4.0});
  }
  return out;
}

double qk_dirac_eigenvalue(int m, double a, double b) { return -(2.0 * m + 1.0) * a - b; }

WkTypeCriterion wk_criterion(double a, double b, int m) {
  if (m < 2) throw std::invalid_argument("criterion needs dimension >= 5 (m >= 2)");
  if (std::abs(std::abs(a) - 0.5) > 1e-12)
    throw std::invalid_argument("criterion applies to types with a = +-1/2");
  WkTypeCriterion out;
  double q = (2.0 * m * m - m - 2.0) / (m - 1.0);
  out.required_b = (a > 0 ? -1.0 : 1.0) * q / 4.0;
  out.killing_case = std::abs(b) < 1e-12;
  out.is_wk = out.killing_case || std::abs(b - out.required_b) < 1e-9;
  out.ric_g_coef = (2.0 - m) / (m - 1.0);
  out.ric_eta_coef = q;
  out.scal = 2.0 * m / (m - 1.0);
  return out;
}

DeformationResult deform(const AlmostContactStructure& s, double a) {
  if (!(a > 0)) throw std::invalid_argument("deformation parameter must be positive");
  if (!is_adapted(s.phi, s.xi, s.eta))
    throw std::invalid_argument(s.model.name + ": frame not adapted");
  const int n = s.model.dim;
  std::ostringstream name;
  name << s.model.name << "@a2=" << a * a;
  DeformationResult out;
  out.a = a;
  out.structure = standard_contact_structure(deformed_model(s.model, a * a, name.str()));

  // frame identities of the transformed tensors, written in the base frame
  double ia2 = 1.0 / (a * a);
  Mat gt = ia2 * Mat::Identity(n, n) + (ia2 * ia2 - ia2) * s.eta * s.eta.transpose();
  Mat F = a * Mat::Identity(n, n);
  F(s.xi, s.xi) = a * a;
  double r = (F.transpose() * gt * F - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  Vec eta_t = ia2 * s.eta;
  r = std::max(r, std::abs(eta_t(s.xi) * a * a - 1.0));
  Mat compat = s.phi.transpose() * gt * s.phi - gt + eta_t * eta_t.transpose();
  out.tensor_residual = std::max(r, compat.cwiseAbs().maxCoeff());
  return out;
}

Mat deformed_ricci(const Mat& ric, int m, double a) {
  const int n = 2 * m + 1;
  const int xi = reeb_index(n);
  Mat out = Mat::Zero(n, n);
  for (int j = 0; j < xi; ++j)
    for (int l = 0; l < xi; ++l)
      out(j, l) = a * a * ric(j, l) + (j == l ? 2.0 * (a * a - 1.0) : 0.0);
  out(xi, xi) = 2.0 * m;
  return out;
}

double deformed_scal(double scal, int m, double a) {
  return a * a * scal + 2.0 * m * (a * a - 1.0);
}

Tensor3 deformed_christoffel(const Tensor3& gamma, int m, double a) {
  const int n = 2 * m + 1;
  const int xi = reeb_index(n);
  const double a2 = a * a;
  Tensor3 out(n);
  for (int w = 0; w < xi; ++w)
    for (int u = 0; u < xi; ++u)
      for (int v = 0; v < xi; ++v) out(w, u, v) = a * gamma(w, u, v);
  for (int u = 0; u < xi; ++u)
    for (int v = 0; v < xi; ++v) {
      out(xi, u, v) = gamma(xi, u, v);
      out(v, u, xi) = -gamma(xi, u, v);
    }
  for (int w = 0; w < xi; ++w)
    for (int v = 0; v < xi; ++v)
      out(w, xi, v) = a2 * gamma(w, xi, v) + (a2 - 1.0) * gamma(xi, v, w);
  // remaining entries with two or three Reeb slots vanish for adapted frames
  return out;
}

std::pair<double, double> transferred_type(int m, double a, double kappa) {
  if (std::abs(std::abs(kappa) - 0.5) > 1e-12)
    throw std::invalid_argument("transfer starts from a Killing number +-1/2");
  return {kappa, kappa * (m + 1.0) * (a * a - 1.0)};
}

std::vector<double> wk_deformation_thresholds(int m) {
  if (m == 1) {
    double r5 = std::sqrt(5.0);
    return {(3.0 + r5) / 8.0, (3.0 - r5) / 8.0};
  }
  return {m / (2.0 * (m * m - 1.0))};
}

double deformation_transfer_residual(const FrameModel& base, const FrameModel& deformed,
                                     const Mat& phi, double a, int chirality) {
  const int n = base.dim;
  const int xi = reeb_index(n);
  GeometryContext cb = make_context(base, chirality);
  GeometryContext cdf = make_context(deformed, chirality);
  Vec x = Vec::Zero(n);
  std::vector<CMat> ob = spin_connection_matrices(cb, x);
  std::vector<CMat> od = spin_connection_matrices(cdf, x);
  const CliffordRep& rep = cb.rep;
  CMat xact = rep.gen[xi];
  CMat phi_act = form_action(rep, fundamental_form(phi));
  double r = 0;
  for (int l = 0; l < xi; ++l) {
    CMat want = a * ob[l] - 0.5 * (a - 1.0) * (vector_action(rep, phi.col(l)) * xact);
    r = std::max(r, frob(od[l] - want));
  }
  CMat want_xi = a * a * ob[xi] - 0.5 * (a * a - 1.0) * phi_act;
  return std::max(r, frob(od[xi] - want_xi));
}

CircleBundleData circle_bundle_curvature(int m, double base_scal, const Mat& omega) {
  if (std::abs(base_scal) < 1e-12)
    throw std::invalid_argument("circle bundle needs nonzero base scalar curvature");
  const int n = 2 * m + 1;
  const int xi = reeb_index(n);
  if (omega.rows() != n || omega.cols() != n)
    throw std::invalid_argument("Kaehler form must be given in the full bundle frame");

  CircleBundleData out;
  out.m = m;
  out.base_scal = base_scal;
  out.omega = omega;

  Vec eta = Vec::Zero(n);
  eta(xi) = 1.0;
  double kr = (omega + omega.transpose()).cwiseAbs().maxCoeff();
  kr = std::max(kr, (omega.transpose() * omega - Mat::Identity(n, n) +
                     eta * eta.transpose())
                        .cwiseAbs()
                        .maxCoeff());
  kr = std::max(kr, std::abs(omega.squaredNorm() - 2.0 * m));
  out.kaehler_residual = kr;

  // bundle-frame Christoffels: transverse part normal at the point, every
  // entry with one Reeb slot is -omega
  out.gamma = Tensor3(n);
  for (int u = 0; u < xi; ++u)
    for (int v = 0; v < xi; ++v) {
      out.gamma(u, xi, v) = -omega(u, v);
      out.gamma(xi, u, v) = -omega(u, v);
      out.gamma(u, v, xi) = -omega(u, v);
    }

  // horizontal Ricci = base Einstein term minus the fiber correction
  Mat ric = Mat::Zero(n, n);
  for (int j = 0; j < xi; ++j)
    for (int l = 0; l < xi; ++l) {
      double fiber = 0;
      for (int u = 0; u < xi; ++u) fiber += omega(u, j) * omega(u, l);
      ric(j, l) = (j == l ? base_scal / (2.0 * m) : 0.0) - 2.0 * fiber;
    }
  ric(xi, xi) = omega.squaredNorm();

  double A = base_scal / (2.0 * m) - 2.0;
  double B = 2.0 * m + 2.0 - base_scal / (2.0 * m);
  out.data = synthetic_sasakian_curvature(m, A, B);
  out.data.ric = ric;
  out.data.scal = ric.trace();
  out.data.ric_norm2 = ric.squaredNorm();
  out.data.trace_ric3 = (ric * ric * ric).trace();
  return out;
}

CurvatureData synthetic_sasakian_curvature(int m, double g_coef, double eta_coef) {
  if (std::abs(g_coef + eta_coef - 2.0 * m) > 1e-9)
    throw std::invalid_argument("eta-Einstein coefficients must satisfy g_coef + eta_coef = 2m");
  const int n = 2 * m + 1;
  const int xi = reeb_index(n);
  Mat phi = adapted_phi(n);
  Vec eta = Vec::Zero(n);
  eta(xi) = 1.0;

  const double f3 = eta_coef / (2.0 * m + 2.0);
  const double f2 = -f3;
  const double f1 = 1.0 - f3;

  CurvatureData cd;
  cd.point = Vec::Zero(n);
  cd.R = Tensor4(n);
  auto kd = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = f1 * (kd(i, k) * kd(j, l) - kd(i, l) * kd(j, k));
          v += f2 * (phi(i, k) * phi(j, l) - phi(i, l) * phi(j, k) +
                     2.0 * phi(i, j) * phi(k, l));
          v += f3 * (eta(i) * eta(k) * kd(j, l) + eta(j) * eta(l) * kd(i, k) -
                     eta(i) * eta(l) * kd(j, k) - eta(j) * eta(k) * kd(i, l));
          cd.R(i, j, k, l) = v;
        }
  cd.ric = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0;
      for (int u = 0; u < n; ++u) s += cd.R(u, j, u, l);
      cd.ric(j, l) = s;
    }
  cd.scal = cd.ric.trace();
  cd.ric_norm2 = cd.ric.squaredNorm();
  cd.trace_ric3 = (cd.ric * cd.ric * cd.ric).trace();
  cd.ric_cov = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        cd.ric_cov(i, j, k) = eta_coef * (-phi(i, k) * eta(j) - eta(i) * phi(j, k));
  cd.grad_s = Vec::Zero(n);
  cd.hess_s = Mat::Zero(n, n);
  cd.lap_s = 0;
  cd.has_derivatives = true;
  return cd;
}

ModifiedConnectionCurvature flat_connection_check(double a, double b, const CurvatureData& cd,
                                                  const CliffordRep& rep,
                                                  const SasakianDecomposition& dec) {
  const int m = dec.m;
  const int n = 2 * m + 1;
  if (rep.n != n) throw std::invalid_argument("dimension mismatch");
  const int xi = reeb_index(n);
  const int d = rep.spinor_dim();
  const CMat xact = rep.gen[xi];

  ModifiedConnectionCurvature out;
  std::vector<CMat> bars;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      CMat M = spin_curvature_matrix(rep, cd, u, v);
      M += a * a * (rep.gen[u] * rep.gen[v] - rep.gen[v] * rep.gen[u]);
      M -= 2.0 * b * dec.phi(u, v) * xact;
      M += 2.0 * a * b *
           (dec.eta(v) * (rep.gen[u] * xact) - dec.eta(u) * (rep.gen[v] * xact));
      M += b * (dec.eta(v) * vector_action(rep, dec.phi.col(u)) -
                dec.eta(u) * vector_action(rep, dec.phi.col(v)));
      bars.push_back(M);
      out.unprojected_max = std::max(out.unprojected_max, frob(M));
    }

  if (m == 1) {
    out.projected_max = out.unprojected_max;
    out.plane_coefficient = cd.scal / 4.0 - 1.0 - 2.0 * a * a + 2.0 * b;
    out.mixed_coefficient = -0.5 + 2.0 * a * a + 2.0 * a * b + b;
  } else {
    // which extreme eigenspaces can carry the type: the fundamental-form
    // relation forces a=+1/2 spinors into Sigma_0 with m even, a=-1/2
    // spinors into Sigma_m (and also Sigma_0 when m is odd)
    if (a > 0)
      out.projected_onto = (m % 2 == 0) ? std::vector<int>{0} : std::vector<int>{};
    else
      out.projected_onto = (m % 2 == 0) ? std::vector<int>{m} : std::vector<int>{0, m};
    if (out.projected_onto.empty()) {
      out.projected_max = out.unprojected_max;
    } else {
      for (int r : out.projected_onto) {
        const CMat& P = dec.projectors[r];
        for (const CMat& M : bars)
          out.projected_max = std::max(out.projected_max, frob(M * P));
      }
    }
  }
  (void)d;
  return out;
}

}  // namespace spinwork

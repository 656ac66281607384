#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "spinwork/contact_sasakian.hpp"
#include "spinwork/spin_connection.hpp"
#include "spinwork/wk_theory.hpp"
#include "support/util.hpp"

using namespace spinwork;

namespace {

const double kSqrt5 = std::sqrt(5.0);

CVec generic_spinor(int d) {
  CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(0.3 + 0.1 * i, 0.7 - 0.2 * i);
  return v;
}

SasakianDecomposition standard_decomposition(int m) {
  CliffordRep rep = build_rep(2 * m + 1, 1);
  return decompose(rep, fundamental_form(adapted_phi(2 * m + 1)));
}

// eta-Einstein curvature matching a quasi-Killing type (|a| = 1/2, m >= 2)
CurvatureData type_curvature(int m, double a, double b) {
  double gc = (a > 0) ? 2.0 * m + 4.0 * b : 2.0 * m - 4.0 * b;
  return synthetic_sasakian_curvature(m, gc, 2.0 * m - gc);
}

}  // namespace

TEST_CASE("adapted tensors satisfy the almost-contact identities in every odd dimension") {
  for (int m = 1; m <= 4; ++m) {
    FrameModel round = catalog("round_s3");
    if (m == 1) {
      auto s = standard_contact_structure(round);
      CHECK(almost_contact_invariants(s) == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(s.xi == 2);
      CHECK(s.m() == 1);
    }
    // the tensor identities need no model: build the structure by hand
    AlmostContactStructure s;
    s.model = round;  // placeholder model, unused by the invariants
    int n = 2 * m + 1;
    s.phi = adapted_phi(n);
    s.xi = n - 1;
    s.eta = Vec::Zero(n);
    s.eta(s.xi) = 1.0;
    CHECK(almost_contact_invariants(s) <= 1e-14);
  }
  CHECK_THROWS_AS(adapted_phi(4), std::invalid_argument);
  CHECK_THROWS_AS(standard_contact_structure(catalog("sol")), std::invalid_argument);
}

TEST_CASE("catalog Sasakian models pass the full covariant verification") {
  for (const char* name : {"round_s3", "sl2r", "nil"}) {
    auto s = standard_contact_structure(catalog(name));
    SasakianVerifyReport r = verify_sasakian(s);
    INFO(name);
    CHECK(r.invariants <= 1e-13);
    CHECK(r.defining <= 1e-13);
    CHECK(r.reeb <= 1e-13);
    CHECK(r.fundamental_deriv <= 1e-13);
    CHECK(r.christoffel <= 1e-13);
  }
}

TEST_CASE("homothetic images of Sasakian models stay Sasakian") {
  for (double a2 : {0.37, 2.0}) {
    auto s =
        standard_contact_structure(catalog("deformed_sasakian_s3", {{"a2", a2}}));
    CHECK(verify_sasakian(s).max() <= 1e-12);
  }
  auto s = standard_contact_structure(catalog("deformed_sasakian_sl2r", {{"a2", 1.5}}));
  CHECK(verify_sasakian(s).max() <= 1e-12);
}

TEST_CASE("verification rejects a frame that is not adapted") {
  auto s = standard_contact_structure(catalog("round_s3"));
  s.phi = -s.phi;
  CHECK_THROWS_AS(verify_sasakian(s), std::invalid_argument);
}

TEST_CASE("spinor bundle splits with binomial multiplicities and alternating Reeb action") {
  for (int m = 1; m <= 4; ++m) {
    SasakianDecomposition dec = standard_decomposition(m);
    REQUIRE(static_cast<int>(dec.dims.size()) == m + 1);
    int total = 0;
    double bin = 1;
    for (int r = 0; r <= m; ++r) {
      CHECK(dec.dims[r] == static_cast<int>(bin + 0.5));
      total += dec.dims[r];
      bin = bin * (m - r) / (r + 1);
    }
    CHECK(total == (1 << m));
    CHECK(dec.projector_residual <= 1e-13);
    CHECK(dec.reeb_sign_residual <= 1e-13);
    CHECK(dec.extreme_residual <= 1e-13);

    // Reeb action on the eigenspaces alternates and is +i at the top
    CliffordRep rep = build_rep(2 * m + 1, 1);
    CVec v = generic_spinor(rep.spinor_dim());
    for (int r = 0; r <= m; ++r) {
      CVec w = dec.projectors[r] * v;
      REQUIRE(w.norm() > 1e-6);
      cplx want = ((r + m) % 2 == 0 ? 1.0 : -1.0) * I;
      CHECK((rep.gen[2 * m] * w - want * w).norm() <= 1e-12 * w.norm());
    }
  }
}

TEST_CASE("decomposition fails loudly in the mirrored spin representation") {
  for (int m : {1, 2}) {
    CliffordRep rep = build_rep(2 * m + 1, -1);
    CHECK_THROWS_WITH_AS(
        decompose(rep, fundamental_form(adapted_phi(2 * m + 1))),
        doctest::Contains("mirrored"), std::runtime_error);
  }
}

TEST_CASE("decomposition rejects malformed fundamental forms") {
  CliffordRep rep = build_rep(3, 1);
  // scaled form: spectrum leaves the admissible set
  CHECK_THROWS_WITH_AS(decompose(rep, fundamental_form(2.0 * adapted_phi(3))),
                       doctest::Contains("spectrum"), std::runtime_error);
  // wrong degree
  FrameForm one;
  one.degree = 1;
  one.terms = {{{0}, 1.0}};
  CHECK_THROWS_AS(decompose(rep, one), std::invalid_argument);
  // a term touching the Reeb leg
  CliffordRep rep5 = build_rep(5, 1);
  FrameForm bad = fundamental_form(adapted_phi(5));
  bad.terms.push_back({{0, 4}, 1.0});
  CHECK_THROWS_AS(decompose(rep5, bad), std::invalid_argument);
}

TEST_CASE("three-dimensional Sasakian curvature satisfies the algebraic relations") {
  SasakianDecomposition dec = standard_decomposition(1);
  CliffordRep rep = build_rep(3, 1);
  for (const char* name : {"round_s3", "nil", "sl2r"}) {
    CurvatureData cd = curvature(catalog(name), Vec::Zero(3));
    SasakianAlgebraReport r = check_sasakian_algebra(rep, dec, cd);
    INFO(name);
    CHECK(r.max() <= 1e-12);
  }
}

TEST_CASE("synthetic eta-Einstein curvature passes the algebraic relations in higher dimension") {
  for (int m : {2, 3}) {
    SasakianDecomposition dec = standard_decomposition(m);
    CliffordRep rep = build_rep(2 * m + 1, 1);
    for (double B : {0.0, 3.0, -4.0}) {
      CurvatureData cd = synthetic_sasakian_curvature(m, 2.0 * m - B, B);
      SasakianAlgebraReport r = check_sasakian_algebra(rep, dec, cd);
      INFO("m=" << m << " B=" << B);
      CHECK(r.max() <= 1e-12);
      CHECK(r.extreme_products <= 1e-12);
    }
  }
}

TEST_CASE("the extreme-product relations are not vacuous") {
  SasakianDecomposition dec = standard_decomposition(2);
  CliffordRep rep = build_rep(5, 1);
  CMat A = rep.gen[0] * rep.gen[2];
  // the same operator has a large matrix element between the two extremes
  CHECK((dec.projectors[0] * A * dec.projectors[2]).cwiseAbs().maxCoeff() > 0.2);
  CHECK((dec.projectors[0] * A * dec.projectors[0]).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("a five-dimensional product is flagged by the Sasakian curvature relations") {
  SasakianDecomposition dec = standard_decomposition(2);
  CliffordRep rep = build_rep(5, 1);
  CurvatureData cd = curvature(catalog("s2xs3"), Vec::Zero(5));
  SasakianAlgebraReport r = check_sasakian_algebra(rep, dec, cd);
  CHECK(r.ricci_contractions > 1.0);
  CHECK(r.reeb_planes == doctest::Approx(1.0));
}

TEST_CASE("quasi-Killing types determine scalar curvature, Ricci action and the "
          "fundamental-form relation in dimension three") {
  CliffordRep rep = build_rep(3, 1);
  CVec psi = generic_spinor(2);
  // Killing spinors on the round sphere: type (-1/2, 0)
  {
    CurvatureData cd = curvature(catalog("round_s3"), Vec::Zero(3));
    auto q = quasi_killing_consequences(-0.5, 0.0, 1, cd, rep, psi);
    CHECK(q.scal_residual <= 1e-13);
    CHECK(q.ric_norm2_residual <= 1e-13);
    CHECK(q.ricci_action <= 1e-13);
    CHECK(q.fundamental_relation <= 1e-13);
    REQUIRE(q.eta_einstein.has_value());
    CHECK(*q.eta_einstein <= 1e-13);
    REQUIRE(q.on_branch.has_value());
    CHECK(*q.on_branch);
  }
  // the eta-Einstein geometry of sl(2,R) carries the type (-1/2, 2)
  {
    CurvatureData cd = curvature(catalog("sl2r"), Vec::Zero(3));
    auto q = quasi_killing_consequences(-0.5, 2.0, 1, cd, rep, psi);
    CHECK(q.scal_residual <= 1e-13);
    CHECK(q.ricci_action <= 1e-13);
    CHECK(q.fundamental_relation <= 1e-13);
    REQUIRE(q.eta_einstein.has_value());
    CHECK(*q.eta_einstein <= 1e-13);
    CHECK(*q.on_branch);
  }
  // all three admissible types at positive scalar curvature
  {
    double S = 1.0 + kSqrt5;
    CurvatureData cd = synthetic_sasakian_curvature(1, (S - 2.0) / 2.0, 2.0 - (S - 2.0) / 2.0);
    auto types = sasakian3_qk_types(S);
    REQUIRE(types.size() == 3);
    for (auto [a, b] : types) {
      auto q = quasi_killing_consequences(a, b, 1, cd, rep, psi);
      INFO("type a=" << a << " b=" << b);
      CHECK(q.scal_residual <= 1e-12);
      CHECK(q.ric_norm2_residual <= 1e-12);
      CHECK(q.ricci_action <= 1e-12);
      CHECK(q.fundamental_relation <= 1e-12);
      CHECK(q.branch_distance <= 1e-12);
      // the second branch does not have |a| = 1/2
      CHECK(q.eta_einstein.has_value() == (std::abs(std::abs(a) - 0.5) < 1e-9));
    }
  }
  // detuned coefficients leave the branch set
  {
    CurvatureData cd = curvature(catalog("round_s3"), Vec::Zero(3));
    auto q = quasi_killing_consequences(-0.5, 0.1, 1, cd, rep, psi);
    CHECK_FALSE(*q.on_branch);
    CHECK(q.branch_distance > 0.05);
  }
  CHECK_THROWS_AS(quasi_killing_consequences(-0.5, 0.0, 1,
                                             curvature(catalog("round_s3"), Vec::Zero(3)), rep,
                                             psi, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("higher-dimensional quasi-Killing spinors live on extreme eigenspaces") {
  for (int m : {2, 3}) {
    SasakianDecomposition dec = standard_decomposition(m);
    CliffordRep rep = build_rep(2 * m + 1, 1);
    CVec v = generic_spinor(rep.spinor_dim());
    for (double a : {0.5, -0.5}) {
      if (a > 0 && m % 2 == 1) continue;  // positive sign needs even m
      double b = wk_criterion(a, 0.0, m).required_b;
      CurvatureData cd = type_curvature(m, a, b);
      std::vector<int> spaces = (a > 0) ? std::vector<int>{0} : std::vector<int>{m};
      if (a < 0 && m % 2 == 1) spaces.push_back(0);
      for (int r : spaces) {
        CVec psi = dec.projectors[r] * v;
        auto q = quasi_killing_consequences(a, b, m, cd, rep, psi);
        INFO("m=" << m << " a=" << a << " space=" << r);
        CHECK(q.scal_residual <= 1e-12);
        CHECK(q.ric_norm2_residual <= 1e-12);
        CHECK(q.ricci_action <= 1e-12);
        CHECK(q.fundamental_relation <= 1e-12);
        REQUIRE(q.eta_einstein.has_value());
        CHECK(*q.eta_einstein <= 1e-12);
      }
    }
    // the opposite extreme fails for even m
    if (m % 2 == 0) {
      double b = wk_criterion(0.5, 0.0, m).required_b;
      CurvatureData cd = type_curvature(m, 0.5, b);
      CVec bad = dec.projectors[m] * v;
      auto q = quasi_killing_consequences(0.5, b, m, cd, rep, bad);
      CHECK(q.ricci_action > 0.3);
      CHECK(q.fundamental_relation > 0.3);
    }
  }
}

TEST_CASE("admissible three-dimensional types and their Dirac eigenvalues") {
  // high curvature: three types, including both Killing constants
  auto t6 = sasakian3_qk_types(6.0);
  REQUIRE(t6.size() == 3);
  CHECK(t6[0].first == doctest::Approx(-0.5));
  CHECK(t6[0].second == doctest::Approx(0.0));
  CHECK(t6[1].first == doctest::Approx(-1.5));
  CHECK(t6[1].second == doctest::Approx(2.0));
  CHECK(t6[2].first == doctest::Approx(0.5));
  CHECK(t6[2].second == doctest::Approx(0.0));
  CHECK(qk_dirac_eigenvalue(1, -0.5, 0.0) == doctest::Approx(1.5));
  CHECK(qk_dirac_eigenvalue(1, 0.5, 0.0) == doctest::Approx(-1.5));
  // below the discriminant only the rigid branch survives
  CHECK(sasakian3_qk_types(-10.0).size() == 1);
  // branch eigenvalues at the special scalar curvatures
  for (int sign : {1, -1}) {
    double S = 1.0 + sign * kSqrt5;
    auto types = sasakian3_qk_types(S);
    bool found = false;
    for (auto [a, b] : types)
      if (std::abs(qk_dirac_eigenvalue(1, a, b) - (2.0 + sign * kSqrt5) / 2.0) < 1e-12)
        found = true;
    CHECK(found);
  }
}

TEST_CASE("the weak-Killing type criterion in dimension five and seven") {
  auto w2 = wk_criterion(0.5, -1.0, 2);
  CHECK(w2.required_b == doctest::Approx(-1.0));
  CHECK(w2.is_wk);
  CHECK_FALSE(w2.killing_case);
  CHECK(w2.ric_g_coef == doctest::Approx(0.0));
  CHECK(w2.ric_eta_coef == doctest::Approx(4.0));
  CHECK(w2.scal == doctest::Approx(4.0));
  CHECK(wk_criterion(-0.5, 1.0, 2).required_b == doctest::Approx(1.0));
  auto w3 = wk_criterion(-0.5, 1.625, 3);
  CHECK(w3.required_b == doctest::Approx(13.0 / 8.0));
  CHECK(w3.is_wk);
  CHECK(w3.ric_g_coef == doctest::Approx(-0.5));
  CHECK(w3.ric_eta_coef == doctest::Approx(6.5));
  CHECK(w3.scal == doctest::Approx(3.0));
  // Killing case passes trivially, detuned b fails
  CHECK(wk_criterion(0.5, 0.0, 2).killing_case);
  CHECK(wk_criterion(0.5, 0.0, 2).is_wk);
  CHECK_FALSE(wk_criterion(0.5, -0.9, 2).is_wk);
  CHECK_THROWS_AS(wk_criterion(0.5, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(wk_criterion(0.3, 0.0, 2), std::invalid_argument);
}

TEST_CASE("homothetic deformation is functorial and preserves the contact identities") {
  auto s = standard_contact_structure(catalog("round_s3"));
  DeformationResult d1 = deform(s, 0.7);
  CHECK(d1.tensor_residual <= 1e-12);
  CHECK(verify_sasakian(d1.structure).max() <= 1e-12);
  DeformationResult d2 = deform(d1.structure, 1.3);
  DeformationResult d12 = deform(s, 0.7 * 1.3);
  CurvatureData c2 = curvature(d2.structure.model, Vec::Zero(3));
  CurvatureData c12 = curvature(d12.structure.model, Vec::Zero(3));
  CHECK((c2.ric - c12.ric).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(std::abs(c2.scal - c12.scal) <= 1e-10);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(d2.structure.model.sc->c(i, j, k) ==
              doctest::Approx(d12.structure.model.sc->c(i, j, k)).epsilon(1e-10));
  CHECK_THROWS_AS(deform(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(deform(s, -1.0), std::invalid_argument);
}

TEST_CASE("deformed connection, Ricci and scalar curvature match the closed forms") {
  for (auto [name, a2] :
       std::vector<std::pair<const char*, double>>{{"round_s3", 0.37}, {"sl2r", 2.0}}) {
    FrameModel base = catalog(name);
    FrameModel def = deformed_model(base, a2, "scaled");
    double a = std::sqrt(a2);
    Tensor3 direct = christoffel(def, Vec::Zero(3)).gamma;
    Tensor3 predicted = deformed_christoffel(christoffel(base, Vec::Zero(3)).gamma, 1, a);
    double dg = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) dg = std::max(dg, std::abs(direct(i, j, k) - predicted(i, j, k)));
    INFO(name);
    CHECK(dg <= 1e-12);
    CurvatureData cb = curvature(base, Vec::Zero(3));
    CurvatureData cd = curvature(def, Vec::Zero(3));
    CHECK((cd.ric - deformed_ricci(cb.ric, 1, a)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(cd.scal == doctest::Approx(deformed_scal(cb.scal, 1, a)).epsilon(1e-12));
  }
}

TEST_CASE("deformed eta-Einstein geometries have the predicted Ricci tensors") {
  // Einstein base: transversally rescaled round sphere
  for (double a2 : {0.5, 2.0}) {
    CurvatureData cd = curvature(catalog("deformed_sasakian_s3", {{"a2", a2}}), Vec::Zero(3));
    Mat want = (4.0 * a2 - 2.0) * Mat::Identity(3, 3);
    want(2, 2) = 2.0;
    CHECK((cd.ric - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(cd.scal == doctest::Approx(8.0 * a2 - 2.0));
  }
  // negative-curvature base stays obstructed for every parameter
  for (double a2 : {0.4, 1.5, 3.0}) {
    CurvatureData cd = curvature(catalog("deformed_sasakian_sl2r", {{"a2", a2}}), Vec::Zero(3));
    Mat want = (-4.0 * a2 - 2.0) * Mat::Identity(3, 3);
    want(2, 2) = 2.0;
    CHECK((cd.ric - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(cd.scal == doctest::Approx(-8.0 * a2 - 2.0));
    CHECK(cd.scal < 0);  // admissible scalar curvatures are positive
  }
}

TEST_CASE("spin connections transform as predicted under homothetic deformation") {
  FrameModel base = catalog("round_s3");
  for (double a2 : {0.37, (3.0 + kSqrt5) / 8.0, (3.0 - kSqrt5) / 8.0}) {
    FrameModel def = deformed_model(base, a2, "scaled");
    for (int chi : {1, -1}) {
      INFO("a2=" << a2 << " chi=" << chi);
      CHECK(deformation_transfer_residual(base, def, adapted_phi(3), std::sqrt(a2), chi) <=
            1e-12);
    }
  }
}

TEST_CASE("transferred spinors are quasi-Killing of the predicted type but not weak Killing") {
  double a2 = 0.37;
  FrameModel def = catalog("deformed_sasakian_s3", {{"a2", a2}});
  GeometryContext ctx = make_exp_context(def, 1);
  CVec psi0(2);
  psi0 << cplx(0.6, 0.2), cplx(-0.1, 0.9);
  SpinorField f = constant_field(psi0);
  auto [kap, b] = transferred_type(1, std::sqrt(a2), -0.5);
  CHECK(kap == doctest::Approx(-0.5));
  CHECK(b == doctest::Approx(1.0 - a2));
  EquationSpec qk{EquationKind::QuasiKilling, 0.0, kap, b, +1};
  ResidualReport rq = residual_report(ctx, f, qk, 5, 7, 1e-8);
  CHECK(rq.pass);
  // the transferred type agrees with the rigid branch at the deformed scalar curvature
  CurvatureData cd = curvature(def, Vec::Zero(3));
  auto types = sasakian3_qk_types(cd.scal);
  CHECK(std::abs(types[0].first - kap) <= 1e-12);
  CHECK(std::abs(types[0].second - b) <= 1e-12);
  // away from the special parameters it is not weak Killing
  EquationSpec wk{EquationKind::WeakKilling, qk_dirac_eigenvalue(1, kap, b), 0.0, 0.0, +1};
  ResidualReport rw = residual_report(ctx, f, wk, 5, 7, 1e-6);
  CHECK_FALSE(rw.pass);
  CHECK(rw.max_residual > 0.1);
}

TEST_CASE("at the special deformation parameters an equivariant weak Killing spinor appears") {
  for (int sign : {1, -1}) {
    double a2 = (3.0 + sign * kSqrt5) / 8.0;
    FrameModel def = catalog("deformed_sasakian_s3", {{"a2", a2}});
    CurvatureData cd = curvature(def, Vec::Zero(3));
    CHECK(cd.scal == doctest::Approx(1.0 + sign * kSqrt5));
    GeometryContext ctx = make_exp_context(def, 1);
    double lam_want = (2.0 + sign * kSqrt5) / 2.0;
    // exactly one admissible type carries the weak Killing eigenvalue
    int witnesses = 0;
    for (auto [a, b] : sasakian3_qk_types(cd.scal)) {
      if (std::abs(a + 0.5) < 1e-9) continue;  // the transferred type, checked above
      std::vector<CMat> M = quasi_killing_matrices(ctx, a, b);
      CHECK(flatness_residual(ctx, M) <= 1e-10);
      CVec psi0(2);
      psi0 << cplx(1.0, 0.0), cplx(0.2, -0.4);
      SpinorField f = equivariant_field(ctx, M, psi0);
      EquationSpec qk{EquationKind::QuasiKilling, 0.0, a, b, +1};
      CHECK(residual_report(ctx, f, qk, 4, 5, 1e-8).pass);
      double lam = qk_dirac_eigenvalue(1, a, b);
      EquationSpec wk{EquationKind::WeakKilling, lam, 0.0, 0.0, +1};
      ResidualReport rw = residual_report(ctx, f, wk, 4, 5, 1e-8);
      if (std::abs(lam - lam_want) < 1e-9) {
        CHECK(rw.pass);
        ++witnesses;
      } else {
        CHECK_FALSE(rw.pass);
      }
    }
    CHECK(witnesses == 1);
  }
}

TEST_CASE("deformation thresholds match the type criterion in higher dimension") {
  for (int m : {2, 3}) {
    auto th = wk_deformation_thresholds(m);
    REQUIRE(th.size() == 1);
    CHECK(th[0] == doctest::Approx(m / (2.0 * (m * m - 1.0))));
    auto [kap, b] = transferred_type(m, std::sqrt(th[0]), -0.5);
    auto w = wk_criterion(kap, b, m);
    CHECK(w.is_wk);
    CHECK(b == doctest::Approx(w.required_b));
  }
  auto th1 = wk_deformation_thresholds(1);
  REQUIRE(th1.size() == 2);
  CHECK(th1[0] == doctest::Approx((3.0 + kSqrt5) / 8.0));
  CHECK(th1[1] == doctest::Approx((3.0 - kSqrt5) / 8.0));
}

TEST_CASE("circle bundle over an Einstein surface reproduces the round three-sphere") {
  CircleBundleData cb = circle_bundle_curvature(1, 8.0, adapted_phi(3));
  CHECK(cb.kaehler_residual <= 1e-13);
  CurvatureData round = curvature(catalog("round_s3"), Vec::Zero(3));
  CHECK((cb.data.ric - round.ric).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(cb.data.scal == doctest::Approx(6.0));
  // the bundle connection gives back the defining covariant identity
  Mat phi = adapted_phi(3);
  Vec eta = Vec::Zero(3);
  eta(2) = 1.0;
  double worst = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double d = 0;
        for (int u = 0; u < 3; ++u)
          d += cb.gamma(i, k, u) * phi(u, j) - phi(i, u) * cb.gamma(u, k, j);
        double target = (k == j ? eta(i) : 0.0) - eta(j) * (i == k ? 1.0 : 0.0);
        worst = std::max(worst, std::abs(d - target));
      }
  CHECK(worst <= 1e-13);
  // connection components along the fiber all equal the negative Kaehler form
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) {
      CHECK(cb.gamma(u, 2, v) == doctest::Approx(-phi(u, v)));
      CHECK(cb.gamma(2, u, v) == doctest::Approx(-phi(u, v)));
      CHECK(cb.gamma(u, v, 2) == doctest::Approx(-phi(u, v)));
    }
}

TEST_CASE("circle bundle curvature realizes the weak-Killing geometries upstairs") {
  // dimension five over scalar curvature eight: Ricci concentrates on the fiber
  CircleBundleData cb2 = circle_bundle_curvature(2, 8.0, adapted_phi(5));
  Mat want2 = Mat::Zero(5, 5);
  want2(4, 4) = 4.0;
  CHECK((cb2.data.ric - want2).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(cb2.data.scal == doctest::Approx(wk_criterion(0.5, -1.0, 2).scal));
  // dimension seven over scalar curvature nine
  CircleBundleData cb3 = circle_bundle_curvature(3, 9.0, adapted_phi(7));
  auto w3 = wk_criterion(-0.5, 13.0 / 8.0, 3);
  Mat want3 = w3.ric_g_coef * Mat::Identity(7, 7);
  want3(6, 6) = w3.ric_g_coef + w3.ric_eta_coef;
  CHECK((cb3.data.ric - want3).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(cb3.data.scal == doctest::Approx(w3.scal));
  // the synthetic curvature behind it passes the algebraic relations
  SasakianDecomposition dec = standard_decomposition(2);
  CHECK(check_sasakian_algebra(build_rep(5, 1), dec, cb2.data).max() <= 1e-12);
  CHECK_THROWS_AS(circle_bundle_curvature(1, 0.0, adapted_phi(3)), std::invalid_argument);
  CHECK_THROWS_AS(circle_bundle_curvature(2, 8.0, adapted_phi(3)), std::invalid_argument);
  // a degenerate bundle form is reported, not silently accepted
  CHECK(circle_bundle_curvature(1, 8.0, Mat::Zero(3, 3)).kaehler_residual > 0.5);
}

TEST_CASE("synthetic curvature generator matches honest model curvature in dimension three") {
  for (const char* name : {"round_s3", "sl2r", "nil"}) {
    CurvatureData cm = curvature(catalog(name), Vec::Zero(3));
    double A = cm.ric(0, 0);
    double B = cm.ric(2, 2) - A;
    CurvatureData cs = synthetic_sasakian_curvature(1, A, B);
    double dr = 0, dc = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          dc = std::max(dc, std::abs(cm.ric_cov(i, j, k) - cs.ric_cov(i, j, k)));
          for (int l = 0; l < 3; ++l)
            dr = std::max(dr, std::abs(cm.R(i, j, k, l) - cs.R(i, j, k, l)));
        }
    INFO(name);
    CHECK(dr <= 1e-12);
    CHECK(dc <= 1e-12);
    CHECK((cm.ric - cs.ric).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("synthetic curvature has the symmetries and contractions of a curvature tensor") {
  for (int m : {2, 3}) {
    int n = 2 * m + 1;
    CurvatureData cd = synthetic_sasakian_curvature(m, 2.0 * m - 5.0, 5.0);
    double anti = 0, pair = 0, bianchi = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            anti = std::max({anti, std::abs(cd.R(i, j, k, l) + cd.R(j, i, k, l)),
                             std::abs(cd.R(i, j, k, l) + cd.R(i, j, l, k))});
            pair = std::max(pair, std::abs(cd.R(i, j, k, l) - cd.R(k, l, i, j)));
            bianchi = std::max(bianchi, std::abs(cd.R(i, j, k, l) + cd.R(j, k, i, l) +
                                                 cd.R(k, i, j, l)));
          }
    INFO("m=" << m);
    CHECK(anti <= 1e-13);
    CHECK(pair <= 1e-13);
    CHECK(bianchi <= 1e-13);
    // contraction really produces the requested eta-Einstein tensor
    Mat want = (2.0 * m - 5.0) * Mat::Identity(n, n);
    want(n - 1, n - 1) = 2.0 * m;
    CHECK((cd.ric - want).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(cd.scal == doctest::Approx(2.0 * m * (2.0 * m - 5.0) + 2.0 * m));
  }
  CHECK_THROWS_AS(synthetic_sasakian_curvature(2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("every admissible three-dimensional type makes the modified connection flat") {
  SasakianDecomposition dec = standard_decomposition(1);
  CliffordRep rep = build_rep(3, 1);
  // round sphere with its Killing types
  CurvatureData round = curvature(catalog("round_s3"), Vec::Zero(3));
  for (auto [a, b] : sasakian3_qk_types(round.scal)) {
    auto f = flat_connection_check(a, b, round, rep, dec);
    INFO("a=" << a << " b=" << b);
    CHECK(f.unprojected_max <= 1e-12);
    CHECK(std::abs(f.plane_coefficient) <= 1e-12);
    CHECK(std::abs(f.mixed_coefficient) <= 1e-12);
  }
  // both special scalar curvatures, all admissible types
  for (int sign : {1, -1}) {
    double S = 1.0 + sign * kSqrt5;
    CurvatureData cd = synthetic_sasakian_curvature(1, (S - 2.0) / 2.0, 2.0 - (S - 2.0) / 2.0);
    for (auto [a, b] : sasakian3_qk_types(S)) {
      auto f = flat_connection_check(a, b, cd, rep, dec);
      CHECK(f.unprojected_max <= 1e-12);
    }
  }
  // negative-curvature eta-Einstein model with its rigid type
  CurvatureData sl = curvature(catalog("sl2r"), Vec::Zero(3));
  auto fs = flat_connection_check(-0.5, 2.0, sl, rep, dec);
  CHECK(fs.unprojected_max <= 1e-12);
}

TEST_CASE("the modified connection detects detuned coefficients through its two invariants") {
  SasakianDecomposition dec = standard_decomposition(1);
  CliffordRep rep = build_rep(3, 1);
  CurvatureData round = curvature(catalog("round_s3"), Vec::Zero(3));
  for (auto [a, b] : std::vector<std::pair<double, double>>{
           {-0.5, 0.05}, {-0.3, 0.0}, {0.2, 0.7}}) {
    auto f = flat_connection_check(a, b, round, rep, dec);
    INFO("a=" << a << " b=" << b);
    CHECK(f.unprojected_max > 0.05);
    // the curvature is carried entirely by the two scalar coefficients
    CHECK(f.unprojected_max ==
          doctest::Approx(std::max(std::abs(f.plane_coefficient),
                                   std::abs(f.mixed_coefficient))));
    CHECK(f.plane_coefficient ==
          doctest::Approx(round.scal / 4.0 - 1.0 - 2.0 * a * a + 2.0 * b));
    CHECK(f.mixed_coefficient == doctest::Approx(-0.5 + 2.0 * a * a + 2.0 * a * b + b));
  }
}

TEST_CASE("in higher dimension the modified connection is flat exactly on the carrier spaces") {
  for (int m : {2, 3, 4}) {
    SasakianDecomposition dec = standard_decomposition(m);
    CliffordRep rep = build_rep(2 * m + 1, 1);
    for (double a : {0.5, -0.5}) {
      double b = wk_criterion(a, 0.0, m).required_b;
      CurvatureData cd = type_curvature(m, a, b);
      auto f = flat_connection_check(a, b, cd, rep, dec);
      INFO("m=" << m << " a=" << a);
      CHECK(f.unprojected_max > 1.0);  // never flat on the whole bundle
      if (a > 0 && m % 2 == 1) {
        // no eigenspace can carry the type: the check reports the honest value
        CHECK(f.projected_onto.empty());
        CHECK(f.projected_max == doctest::Approx(f.unprojected_max));
      } else {
        REQUIRE_FALSE(f.projected_onto.empty());
        CHECK(f.projected_max <= 1e-12);
        for (int r : f.projected_onto) CHECK((r == 0 || r == m));
      }
      // Einstein case: the plain Killing connection is flat everywhere
      CurvatureData ce = synthetic_sasakian_curvature(m, 2.0 * m, 0.0);
      auto fk = flat_connection_check(a, 0.0, ce, rep, dec);
      CHECK(fk.unprojected_max <= 1e-12);
      // mismatched curvature destroys flatness on the carrier spaces
      auto fm = flat_connection_check(a, b, ce, rep, dec);
      CHECK(fm.projected_max > 0.1);
    }
  }
}

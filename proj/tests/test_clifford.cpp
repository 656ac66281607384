#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinwork/clifford.hpp"
#include "support/util.hpp"

using namespace spinwork;
using testutil::max_abs;
using testutil::random_cvec;
using testutil::random_vec;

namespace {

cplx i_pow(int p) {
  cplx out(1, 0);
  for (int k = 0; k < ((p % 4) + 4) % 4; ++k) out *= I;
  return out;
}

}  // namespace

TEST_CASE("two dimensional generators are the canonical pair") {
  auto rep = build_rep(2);
  CMat g1(2, 2), g2(2, 2);
  g1 << I, 0, 0, -I;
  g2 << 0, I, I, 0;
  CHECK(max_abs(rep.gen[0] - g1) == 0.0);
  CHECK(max_abs(rep.gen[1] - g2) == 0.0);
}

TEST_CASE("odd last generator is chirality * i * T^m") {
  auto plus = build_rep(3, +1);
  auto minus = build_rep(3, -1);
  CMat e3(2, 2);
  e3 << 0, 1, -1, 0;  // i*T
  CHECK(max_abs(plus.gen[2] - e3) == 0.0);
  CHECK(max_abs(minus.gen[2] + e3) == 0.0);
  // chirality -1 realizes the E1*E2 = E3 multiplication table
  CHECK(max_abs(minus.gen[0] * minus.gen[1] - minus.gen[2]) == 0.0);
  CHECK(max_abs(minus.gen[1] * minus.gen[2] - minus.gen[0]) == 0.0);
  CHECK(max_abs(minus.gen[0] * minus.gen[2] + minus.gen[1]) == 0.0);
  // chirality +1 realizes E1*E2 = -E3
  CHECK(max_abs(plus.gen[0] * plus.gen[1] + plus.gen[2]) == 0.0);
}

TEST_CASE("generator relations for n = 2..9") {
  for (int n = 2; n <= 9; ++n) {
    for (int chi : {+1, -1}) {
      auto rep = build_rep(n, chi);
      const int d = rep.spinor_dim();
      REQUIRE(d == (1 << (n / 2)));
      CMat idm = CMat::Identity(d, d);
      double worst = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          CMat anti = rep.gen[i] * rep.gen[j] + rep.gen[j] * rep.gen[i];
          CMat want = (i == j) ? CMat(-2.0 * idm) : CMat(CMat::Zero(d, d));
          worst = std::max(worst, max_abs(anti - want));
        }
        worst = std::max(worst, max_abs(rep.gen[i].adjoint() + rep.gen[i]));
      }
      CHECK(worst < 1e-13);
    }
  }
}

TEST_CASE("vector action is an isometry up to |X|") {
  auto g = testutil::rng(101);
  for (int n : {3, 4, 6, 7}) {
    auto rep = build_rep(n);
    for (int trial = 0; trial < 8; ++trial) {
      Vec X = random_vec(g, n), Y = random_vec(g, n);
      CVec psi = random_cvec(g, rep.spinor_dim());
      CVec Xp = vector_action(rep, X) * psi;
      CVec Yp = vector_action(rep, Y) * psi;
      double n2 = psi.squaredNorm();
      CHECK(std::abs(re_inner(Xp, Yp) - X.dot(Y) * n2) < 1e-12 * (1 + n2));
      CHECK(std::abs(re_inner(Xp, psi)) < 1e-12 * (1 + n2));
    }
  }
}

TEST_CASE("k-form transpose sign (-1)^{k(k+1)/2}") {
  auto g = testutil::rng(202);
  for (int n : {4, 5, 6}) {
    auto rep = build_rep(n);
    for (int k = 1; k <= n; ++k) {
      // random increasing tuple
      std::vector<int> idx(n);
      for (int i = 0; i < n; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), g);
      std::vector<int> tup(idx.begin(), idx.begin() + k);
      std::sort(tup.begin(), tup.end());
      FrameForm w{k, {{tup, 1.7}}};
      CMat W = form_action(rep, w);
      CVec a = random_cvec(g, rep.spinor_dim()), b = random_cvec(g, rep.spinor_dim());
      double sign = (k * (k + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(herm(W * a, b) - sign * herm(a, W * b)) < 1e-12);
    }
  }
}

TEST_CASE("volume element squares and chirality sign") {
  for (int n = 2; n <= 9; ++n) {
    auto rep = build_rep(n, +1);
    CMat mu = volume_element(rep);
    if (n % 2 == 0) {
      const int p = n / 2;
      // mu^2 = (i^p)^2, mu anticommutes with vectors
      CMat mu2 = mu * mu;
      CHECK(max_abs(mu2 - i_pow(p) * i_pow(p) * CMat::Identity(rep.spinor_dim(), rep.spinor_dim())) < 1e-13);
      CHECK(max_abs(mu * rep.gen[0] + rep.gen[0] * mu) < 1e-13);
      CHECK(std::abs(mu.trace()) < 1e-13);
    } else {
      // scalar, and the two chiralities differ exactly by its sign
      CMat mu_minus = volume_element(build_rep(n, -1));
      cplx s = mu(0, 0);
      CHECK(std::abs(std::abs(s) - 1.0) < 1e-13);
      CHECK(max_abs(mu - s * CMat::Identity(rep.spinor_dim(), rep.spinor_dim())) < 1e-13);
      CHECK(max_abs(mu + mu_minus) < 1e-13);
    }
  }
}

TEST_CASE("chirality split projectors and parity swap") {
  auto g = testutil::rng(303);
  for (int n : {2, 4, 6, 8}) {
    auto rep = build_rep(n);
    auto [P, M] = chirality_split(rep);
    const int d = rep.spinor_dim();
    CHECK(max_abs(P + M - CMat::Identity(d, d)) < 1e-13);
    CHECK(max_abs(P * P - P) < 1e-13);
    CHECK(max_abs(M * M - M) < 1e-13);
    CHECK(max_abs(P * M) < 1e-13);
    CHECK(std::abs(P.trace().real() - d / 2.0) < 1e-12);
    // vectors swap the halves
    Vec X = random_vec(g, n);
    CMat Xa = vector_action(rep, X);
    CHECK(max_abs(P * Xa * P) < 1e-12);
    CHECK(max_abs(M * Xa * M) < 1e-12);
    // mu acts as +/- i^p on the halves
    CMat mu = volume_element(rep);
    cplx ip = i_pow(n / 2);
    CHECK(max_abs(mu * P - ip * P) < 1e-13);
    CHECK(max_abs(mu * M + ip * M) < 1e-13);
  }
}

TEST_CASE("cross product identity X.Y.psi = -g(X,Y) psi - (XxY).psi in chirality +1") {
  auto g = testutil::rng(404);
  auto plus = build_rep(3, +1);
  auto minus = build_rep(3, -1);
  for (int trial = 0; trial < 25; ++trial) {
    Vec X = random_vec(g, 3), Y = random_vec(g, 3);
    CVec psi = random_cvec(g, 2);
    Vec XxY = cross_3d(X, Y);
    CVec lhs = vector_action(plus, X) * (vector_action(plus, Y) * psi);
    CVec rhs = -X.dot(Y) * psi - vector_action(plus, XxY) * psi;
    CHECK(max_abs(lhs - rhs) < 1e-13);
    // the -1 module flips the sign of the cross term
    CVec lhs2 = vector_action(minus, X) * (vector_action(minus, Y) * psi);
    CVec rhs2 = -X.dot(Y) * psi + vector_action(minus, XxY) * psi;
    CHECK(max_abs(lhs2 - rhs2) < 1e-13);
  }
}

TEST_CASE("cross product bilinear basics") {
  auto g = testutil::rng(505);
  Vec X = random_vec(g, 3), Y = random_vec(g, 3);
  CHECK(max_abs(CVec((cross_3d(X, Y) + cross_3d(Y, X)).cast<cplx>())) < 1e-14);
  CHECK(std::abs(cross_3d(X, Y).dot(X)) < 1e-13);
  CHECK(std::abs(cross_3d(X, Y).dot(Y)) < 1e-13);
}

TEST_CASE("f psi + X.psi = 0 forces f = 0 and X = 0") {
  // Gram matrix of {psi, E_1 psi, ..., E_n psi} is |psi|^2 I on the real span,
  // so the least-squares solution of f psi + X.psi = 0 is zero.
  auto g = testutil::rng(606);
  for (int n : {3, 5}) {
    auto rep = build_rep(n);
    CVec psi = random_cvec(g, rep.spinor_dim());
    const int d = rep.spinor_dim();
    Eigen::MatrixXd A(2 * d, n + 1);
    auto put = [&](int col, const CVec& v) {
      for (int r = 0; r < d; ++r) {
        A(2 * r, col) = v(r).real();
        A(2 * r + 1, col) = v(r).imag();
      }
    };
    put(0, psi);
    for (int j = 0; j < n; ++j) put(j + 1, rep.gen[j] * psi);
    Eigen::VectorXd sv = A.jacobiSvd().singularValues();
    CHECK(sv(sv.size() - 1) > 0.9 * psi.norm());  // injective, no kernel
  }
}

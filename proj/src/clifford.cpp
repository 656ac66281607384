#include "spinwork/clifford.hpp"

#include <stdexcept>

namespace spinwork {

namespace {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

CliffordRep build_rep(int n, int chirality) {
  if (n < 1) throw std::invalid_argument("build_rep: n must be positive");
  if (chirality != 1 && chirality != -1) throw std::invalid_argument("build_rep: chirality must be +1 or -1");
  const int m = n / 2;

  CMat g1(2, 2), g2(2, 2), T(2, 2), E = CMat::Identity(2, 2);
  g1 << I, 0, 0, -I;
  g2 << 0, I, I, 0;
  T << 0, -I, I, 0;

  CliffordRep rep;
  rep.n = n;
  rep.chirality = chirality;

  if (n == 1) {  // degenerate: Sigma = C, e_1 = chirality * i
    rep.gen = {CMat::Constant(1, 1, cplx(0, chirality))};
    return rep;
  }

  auto factor_product = [&](int j) {
    // j is 1-based; the factor string has m slots: (j-1)/2 copies of T, then
    // g_{alpha(j)}, padded with E.
    const int lead = (j - 1) / 2;
    const CMat& g = (j % 2 == 1) ? g1 : g2;
    CMat out = CMat::Identity(1, 1);
    for (int s = 0; s < m; ++s) {
      const CMat& f = (s < lead) ? T : (s == lead ? g : E);
      out = kron(out, f);
    }
    return out;
  };

  for (int j = 1; j <= 2 * m; ++j) rep.gen.push_back(factor_product(j));
  if (n % 2 == 1) {
    CMat e_last = CMat::Identity(1, 1);
    for (int s = 0; s < m; ++s) e_last = kron(e_last, T);
    rep.gen.push_back(cplx(0, chirality) * e_last);
  }
  return rep;
}

CMat vector_action(const CliffordRep& rep, const Vec& X) {
  if (X.size() != rep.n) throw std::invalid_argument("vector_action: dimension mismatch");
  CMat out = CMat::Zero(rep.spinor_dim(), rep.spinor_dim());
  for (int j = 0; j < rep.n; ++j) out += X(j) * rep.gen[j];
  return out;
}

CMat form_action(const CliffordRep& rep, const FrameForm& w) {
  const int d = rep.spinor_dim();
  CMat out = CMat::Zero(d, d);
  for (const auto& [idx, coeff] : w.terms) {
    if (static_cast<int>(idx.size()) != w.degree) throw std::invalid_argument("form_action: tuple/degree mismatch");
    CMat t = CMat::Identity(d, d);
    int prev = -1;
    for (int i : idx) {
      if (i <= prev) throw std::invalid_argument("form_action: tuples must be strictly increasing");
      if (i < 0 || i >= rep.n) throw std::invalid_argument("form_action: index out of range");
      t = t * rep.gen[i];
      prev = i;
    }
    out += coeff * t;
  }
  return out;
}

CMat volume_element(const CliffordRep& rep) {
  CMat out = CMat::Identity(rep.spinor_dim(), rep.spinor_dim());
  for (const auto& g : rep.gen) out = out * g;
  return out;
}

std::pair<CMat, CMat> chirality_split(const CliffordRep& rep) {
  if (rep.n % 2 != 0) throw std::invalid_argument("chirality_split: defined for even n");
  const int p = rep.n / 2;
  // mu has eigenvalues +/- i^p; scale so the eigenvalues become +/- 1.
  cplx ip(1, 0);
  for (int k = 0; k < p; ++k) ip *= I;
  CMat mu_scaled = volume_element(rep) / ip;
  const int d = rep.spinor_dim();
  CMat idm = CMat::Identity(d, d);
  return {0.5 * (idm + mu_scaled), 0.5 * (idm - mu_scaled)};
}

Vec cross_3d(const Vec& X, const Vec& Y) {
  if (X.size() != 3 || Y.size() != 3) throw std::invalid_argument("cross_3d: vectors must be 3-dimensional");
  Vec out(3);
  out << X(1) * Y(2) - X(2) * Y(1), X(2) * Y(0) - X(0) * Y(2), X(0) * Y(1) - X(1) * Y(0);
  return out;
}

}  // namespace spinwork

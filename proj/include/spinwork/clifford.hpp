#pragma once

#include <vector>

#include "spinwork/linalg.hpp"

namespace spinwork {

// Complex irreducible Clifford module for R^n with e_i e_j + e_j e_i = -2 delta_ij.
// Generators are 2^m x 2^m with m = floor(n/2), built from the Kronecker-product
// pattern over g1 = diag(i,-i), g2 = [[0,i],[i,0]], T = [[0,-i],[i,0]], E = Id2.
// For odd n the last generator is chirality * i * T^{(x)m}; `chirality` is +1 or -1
// and distinguishes the two inequivalent modules (they differ by the sign of
// e_1 ... e_n).  chirality -1 realizes e1 e2 = +e3 at n = 3.
struct CliffordRep {
  int n = 0;          // vector space dimension
  int chirality = 1;  // only meaningful for odd n
  std::vector<CMat> gen;

  int spinor_dim() const { return gen.empty() ? 0 : static_cast<int>(gen[0].rows()); }
};

// A real k-form expressed in an orthonormal coframe: sum over increasing index
// tuples of coeff * E^{i1} ^ ... ^ E^{ik}.  Indices are 0-based.
struct FrameForm {
  int degree = 0;
  std::vector<std::pair<std::vector<int>, double>> terms;
};

CliffordRep build_rep(int n, int chirality = 1);

// Clifford action of the vector with frame components X.
CMat vector_action(const CliffordRep& rep, const Vec& X);

// Clifford action of a form: each increasing tuple acts as E_{i1} ... E_{ik}.
CMat form_action(const CliffordRep& rep, const FrameForm& w);

// mu = e_1 ... e_n.
CMat volume_element(const CliffordRep& rep);

// Projectors onto the +/- eigenspaces of the volume element (eigenvalues
// +/- i^{n/2} for even n): returns {P+, P-}.
std::pair<CMat, CMat> chirality_split(const CliffordRep& rep);

// Euclidean cross product on R^3 in frame components.
Vec cross_3d(const Vec& X, const Vec& Y);

}  // namespace spinwork

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spinwork/clifford.hpp"
#include "spinwork/spin_connection.hpp"

namespace spinwork {

// Clifford generators of M^{2p} x N^r acting on the Kronecker spinor space
// C^{2^p} (x) C^{2^{floor(r/2)}}.  Legs 0..2p-1 act through the M factor
// alone; legs 2p..2p+r-1 act through the M volume element and an N generator.
struct ProductRep {
  int p = 1;
  int r = 2;
  CliffordRep rep_m;
  CliffordRep rep_n;
  CMat mu_m;              // volume element of the M factor
  std::vector<CMat> gen;  // 2p + r product generators
  int spinor_dim() const { return rep_m.spinor_dim() * rep_n.spinor_dim(); }
};

// throws when the first factor has odd dimension
ProductRep build_product_rep(const CliffordRep& rep_m, const CliffordRep& rep_n);

CVec kron(const CVec& a, const CVec& b);

// pure tensor of two factor spinor fields
struct ProductSpinor {
  SpinorField psi_m;
  SpinorField psi_n;
  double lambda_m = 0.0;  // Dirac eigenvalue metadata, 0 when not an eigenspinor
  double lambda_n = 0.0;
  int combined_dim() const { return psi_m.spinor_dim * psi_n.spinor_dim; }
  CVec eval(const Vec& xm, const Vec& xn) const;
};

// field x |-> C f(x) for a constant matrix C
SpinorField matrix_field(const CMat& C, const SpinorField& f);

// Clifford action of one product frame leg on a pure tensor.  M-legs act on
// the first factor; an N-leg multiplies the first factor by i^p mu_M and the
// second by its own generator, so the result is again a pure tensor.
ProductSpinor product_action(const ProductRep& rep, int leg, const ProductSpinor& psi);

// Dirac operator of the product at the concatenated chart point (x_M | x_N)
CVec product_dirac(const ProductRep& rep, const GeometryContext& ctx_m,
                   const GeometryContext& ctx_n, const ProductSpinor& psi, const Vec& x);

// D as a field-level operator: the image of a pure tensor is a sum of two
// pure tensors, so iterating gives D^2 honestly through first-order passes.
std::vector<ProductSpinor> product_dirac_field(const ProductRep& rep,
                                               const GeometryContext& ctx_m,
                                               const GeometryContext& ctx_n,
                                               const ProductSpinor& psi);

struct KillingPairSpec {
  double lambda_m = 0.0;  // nonzero Dirac eigenvalues of the factor spinors
  double lambda_n = 0.0;
  int p = 1;    // half-dimension of the M factor
  int sign = -1;  // produced eigenvalue is sign * sqrt(lambda_m^2 + lambda_n^2)
};

// phi = {lambda + lambda_n (-1)^p} (psi_m^+ (x) psi_n) + lambda_m (psi_m^- (x) psi_n)
// together with the residuals of its defining properties.  The cross-term
// pairing is only meaningful under the half-spinor hypotheses; when they fail
// numerically it is left empty (not applicable) and the conditional residuals
// report whatever the data gives.
struct EinsteinPairResult {
  double lambda = 0.0;
  ProductSpinor phi;
  bool hypotheses_hold = false;
  double hypothesis_residual = 0.0;   // worst violation of the two assumptions
  double dirac_residual = 0.0;        // D phi = lambda phi
  double norm_residual = 0.0;         // |phi|^2 closed form (needs balanced halves)
  double symmetrized_residual = 0.0;  // same-factor symmetrized derivatives vanish
  std::optional<double> cross_term;   // mixed-frame pairing, when hypotheses hold
  double diagonal_m_residual = 0.0;   // M-diagonal derivative pairing
  double diagonal_n_residual = 0.0;   // N-diagonal pairing (needs balanced halves)
};

// throws when an eigenvalue vanishes, dimensions disagree, or a factor fails
// its Killing residual
EinsteinPairResult einstein_pair(const KillingPairSpec& spec, const GeometryContext& ctx_m,
                                 const GeometryContext& ctx_n, const SpinorField& psi_m,
                                 const SpinorField& psi_n, int samples = 6, uint64_t seed = 5);

// scalar-curvature ratio S_N / S_M that balances the two diagonal conditions
double scalar_ratio(int r);

// Scalar-level consistency of the two diagonal normalization constants for a
// product of a 6-manifold with N^r, given the factor data.  Requires the
// Killing relations lambda_m^2 = (3/10) S_m and lambda_n^2 = r S_n / (4(r-1)).
struct ProductAlgebraReport {
  double lambda = 0.0;       // negative root used for the normalization
  double star1_value = 0.0;  // norm product demanded by the M-diagonal
  double star2_value = 0.0;  // ... by the N-diagonal
  double consistency = 0.0;  // relative gap between the two demands
  double star1_residual = 0.0;  // gap to the supplied norm product
  double star2_residual = 0.0;
  double ricci_block_m = 0.0;  // S_m / 6
  double ricci_block_n = 0.0;  // S_n / r
  bool einstein = false;       // the two blocks agree
};

ProductAlgebraReport theorem75_algebra(double s_m, double s_n, int r, double lambda_m,
                                       double lambda_n, double norms);

}  // namespace spinwork

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinwork/clifford.hpp"
#include "spinwork/frame_geometry.hpp"
#include "spinwork/linalg.hpp"
#include "spinwork/spin_connection.hpp"

namespace spinwork {

// Relative residuals of the curvature identities a weak Killing spinor forces
// pointwise: a vector-valued one (max over frame legs), a purely scalar one,
// a cubic one paired against the spinor, and the n = 3 scalar reduction
//   8 lambda^2 (S^2 - 2|Ric|^2) = S^3
// (zero when n != 3).  Terms of odd degree in lambda flip sign with the
// chirality of the representation; the even identities do not see it.
struct WkFirstIntegrals {
  double vector_identity = 0.0;
  double scalar_identity = 0.0;
  double cubic_identity = 0.0;
  double dim3_identity = 0.0;
};

// `cd` must carry derivative data (covariant Ricci derivative, gradient /
// Hessian / Laplacian of S) unless those fields vanish identically.
WkFirstIntegrals wk_first_integrals(const CliffordRep& rep, const CurvatureData& cd,
                                    const CVec& psi, double lambda);

// lambda^2 determined by the scalar identity at constant S,
//   lambda^2 = (n-2)^2 S^3 / ( 4 { (n^2-5n+8) S^2 - 4 |Ric|^2 } ),
// and by the cubic identity under the parallel-Ricci / conformally flat
// hypotheses,
//   lambda^2 = (n-2)^2 S^2 |Ric|^2
//              / ( 4 { (n-3) S^3 - 2(n-4) S |Ric|^2 - 4 tr Ric^3 } ).
// nullopt when the denominator degenerates; a negative value certifies that
// no weak Killing spinor exists.
std::optional<double> lambda2_scalar_form(int n, double scal, double ric_norm2);
std::optional<double> lambda2_cubic_form(int n, double scal, double ric_norm2,
                                         double trace_ric3);

// Einstein specialization of both closed forms: lambda^2 = n S / (4(n-1)).
double friedrich_bound(int n, double scal);

// Pointwise bound for Einstein spinors, with equality on weak Killing data:
//   lambda^2 { (n^2-5n+8) S^2 - 4|Ric|^2 }
//     >= (n-2)^2 / (4(n-1)) { (n-1) S^3 + n |dS|^2 + 2(n-1) S Delta S }.
struct EinsteinSpinorBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
};
EinsteinSpinorBound einstein_spinor_bound(const CurvatureData& cd, double lambda);

// The two vector identities of the 3-dimensional theory, as relative
// residuals: pair_identity ranges over frame pairs k < l, contracted_identity
// over single legs.  `chirality` selects the sign convention of the
// lambda-odd terms, matching the representation the spinor lives in.
struct Dim3Identities {
  double pair_identity = 0.0;
  double contracted_identity = 0.0;
};
Dim3Identities dim3_wk_identities(const CurvatureData& cd, double lambda, int chirality);

// Scalar system a 3-dimensional Sasakian geometry must solve to carry an
// adapted weak Killing spinor (chirality-positive eigenvalue convention):
//   32 lambda^2 + 8 lambda S (S - 6) - S^2 (S - 4) = 0,
//   S^3 = 32 lambda^2 (S - 3).
// Returns the two residuals.
std::pair<double, double> sasakian3_scalar_equations(double scal, double lambda);
// Non-Einstein solutions S = 1 +- sqrt(5) (the Einstein branch sits at S = 6).
std::array<double, 2> sasakian3_admissible_scal();
// Eigenvalue solving the system at the given S: (2 +- sqrt 5)/2 on the two
// non-Einstein branches, 3/2 at S = 6.
double sasakian3_lambda(double scal);

// ---- curvature-driven nonexistence checks ----

struct ObstructionCheck {
  std::string id;     // stable identifier of the criterion
  std::string claim;  // result the conclusion is cited to
  bool applicable = false;
  bool triggered = false;  // hypotheses verified and the criterion excludes WK
  double evidence = 0.0;   // margin or residual backing the verdict
  std::string note;
};

struct ObstructionScan {
  std::string model;
  std::vector<ObstructionCheck> checks;
  bool any_triggered() const;
  std::vector<std::string> triggered_claims() const;
};

// Evaluates every curvature criterion on sampled points of the model.
// Nonexistence is never concluded from numerics alone: each check verifies
// the hypotheses of its cited result on the samples (plus the model's
// structural flags) and reports not-applicable otherwise.
ObstructionScan obstruction_scan(const FrameModel& m, int samples = 6, uint64_t seed = 11,
                                 double tol = 1e-6);

// Certificate that the solvable 3-geometry carries no weak Killing spinor
// among fields constant along the two horizontal legs: for those, the first
// two legs of the equation have the exact relative residual
//   sqrt(lambda^2 + 1/4) / (3/2 + |lambda|)
// independently of the spinor, and the sweep corroborates that floor.
struct SolNonexistence {
  double sweep_min = 1.0;
  double sweep_lambda = 0.0;
  double closed_form_floor = 0.0;  // floor evaluated at sweep_lambda
  bool nonexistent = false;        // sweep_min clears the certification margin
};
SolNonexistence sol_wk_nonexistence(int lambda_steps = 40, int spinor_steps = 12);

// ---- the unit vector field of a 3-dimensional weak Killing spinor ----

// xi_u = -Im <psi, E_u psi> / |psi|^2; satisfies xi . psi = i psi.
Vec wk_unit_vector(const CliffordRep& rep, const CVec& psi);

// Derivative law of that vector field, nabla_k xi = 2 c xi x A(E_k) with
//   A(X) = (2 lambda / S) Ric(X) - lambda X + (c / 4S) grad S x X
// and c the chirality.  corollary_coefficient is
//   sqrt( S^3 / (2 (S^2 - 2|Ric|^2)) )  ( = 2 |lambda| on weak Killing data),
// nullopt when the denominator degenerates.
struct WkVectorReport {
  double unit_residual = 0.0;
  double derivative_residual = 0.0;
  std::optional<double> corollary_coefficient;
};
WkVectorReport wk_vector_report(const GeometryContext& ctx, const SpinorField& f, double lambda,
                                const Vec& x);

// ---- closed-form fields ----

// Weak Killing field on the conformally flat slab model of parameter c (the
// non-constant-S witness); vsign = +-1 selects the branch of the second
// component, with eigenvalue vsign * chirality * c.
SpinorField conformal_wk_field(double c, int vsign, double rho = 1.0);

// Killing field on the round-sphere chart of curvature kappa:
//   psi = u^{-1/2} (1 + b x . gamma) psi0,  u = 1 + kappa |x|^2 / 4,
// with Killing number b = +- sqrt(kappa) / 2, so D psi = -n b psi.
SpinorField sphere_killing_field(const CliffordRep& rep, double kappa, double b,
                                 const CVec& psi0);

// Rescaling that turns a Dirac eigenspinor on an Einstein geometry into a
// solution of the coupled system: |psi|^2 = (n-2)|S| / |lambda| with coupling
// eps = -sign(lambda S).
struct EinsteinDiracNormalization {
  double norm2 = 0.0;
  double eps = 0.0;
};
EinsteinDiracNormalization einstein_dirac_normalization(int n, double scal, double lambda);

}  // namespace spinwork

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spinwork/clifford.hpp"
#include "spinwork/frame_geometry.hpp"
#include "spinwork/linalg.hpp"

namespace spinwork {

// Almost contact metric structure carried by an orthonormal frame:
// phi(E_j) = sum_i phi(i,j) E_i, xi the index of the Reeb vector, eta its
// dual one-form.  "Adapted" means the legs pair as (E_{2k}, E_{2k+1} =
// phi E_{2k}) with the Reeb vector last; all catalog Sasakian models and the
// synthetic curvature generator use that ordering.
struct AlmostContactStructure {
  FrameModel model;
  Mat phi;
  int xi = -1;
  Vec eta;

  int m() const { return (model.dim - 1) / 2; }
};

// phi matrix of the adapted pairing in dimension n = 2m+1.
Mat adapted_phi(int n);

// Structure on a catalog model whose frame is adapted (sasaki_xi = dim-1).
AlmostContactStructure standard_contact_structure(const FrameModel& model);

// max residual of eta(xi) = 1, phi^2 = -Id + xi eta^T, phi^T phi = Id - eta eta^T.
double almost_contact_invariants(const AlmostContactStructure& s);

// Fundamental two-form Phi = sum_{i<j} g(E_i, phi E_j) E^i ^ E^j.
FrameForm fundamental_form(const Mat& phi);

struct SasakianVerifyReport {
  double invariants = 0;        // algebraic almost-contact identities
  double defining = 0;          // (nabla_X phi)(Y) = g(X,Y) xi - eta(Y) X
  double reeb = 0;              // nabla_X xi = -phi(X)
  double fundamental_deriv = 0; // (nabla_X Phi)(Y,Z) = eta(Y) g(X,Z) - eta(Z) g(X,Y)
  double christoffel = 0;       // adapted-frame Christoffel pattern
  double max() const;
};

// Samples the connection over the model and checks the Sasakian defining
// identity together with the adapted-frame Christoffel constraints.  Throws
// std::invalid_argument when the structure is not in adapted form.
SasakianVerifyReport verify_sasakian(const AlmostContactStructure& s, int samples = 4,
                                     uint64_t seed = 3);

// Eigenbundle split of the spinor module under the Clifford action of the
// fundamental form: eigenvalue i(2r-m) on Sigma_r, dim Sigma_r = C(m,r),
// with the Reeb action equal to (-1)^r (-1)^m i on Sigma_r and the extreme
// spaces cut out by phi(X) psi = -+ { i X psi + (-1)^m eta(X) psi } (Sigma_0
// upper sign, Sigma_m with eta-coefficient one).
struct SasakianDecomposition {
  int m = 0;
  Mat phi;
  Vec eta;
  CMat phi_action;
  std::vector<CMat> projectors;  // Sigma_0 .. Sigma_m
  std::vector<int> dims;
  double projector_residual = 0;  // idempotency, orthogonality, completeness
  double reeb_sign_residual = 0;
  double extreme_residual = 0;    // defining equations of Sigma_0 / Sigma_m
};

// Throws std::runtime_error naming the offending eigenvalue when the spectrum
// of the form action is not {i(2r-m)}, and when the Reeb signs come out
// mirrored (wrong chirality or form sign).  The positive-chirality module
// realizes the conventions above.
SasakianDecomposition decompose(const CliffordRep& rep, const FrameForm& fundamental);

// Curvature / Clifford compatibility of a Sasakian structure in an adapted
// frame.  All entries are max-abs residuals.
struct SasakianAlgebraReport {
  double ricci_contractions = 0;    // Ricci rows against transverse curvature sums
  double curvature_reflections = 0; // index-bar reflection symmetries of R
  double reeb_planes = 0;           // R(X,xi,Y,xi) = delta, other xi components zero
  double commutator = 0;            // X Phi - Phi X = 2 phi(X) as matrices
  double fundamental_action = 0;    // (nabla_X Phi) psi = -X xi psi - eta(X) psi
  double extreme_products = 0;      // vanishing products between extreme sections
  double max() const;
};
SasakianAlgebraReport check_sasakian_algebra(const CliffordRep& rep,
                                             const SasakianDecomposition& dec,
                                             const CurvatureData& cd);

// Pointwise consequences of nabla_X psi = a X psi + b eta(X) xi psi on a
// Sasakian manifold: scalar curvature and |Ric|^2 closed forms, the Ricci
// action on psi, the fundamental-form relation 2b Phi psi =
// m(1-4a^2-4ab) xi psi, the eta-Einstein Ricci form forced at a = +-1/2, and
// (three dimensions) membership of (a,b) in the admissible branches at this
// scalar curvature.
struct QuasiKillingConsequences {
  double scal_residual = 0;
  double ric_norm2_residual = 0;
  double ricci_action = 0;
  double fundamental_relation = 0;
  std::optional<double> eta_einstein;  // set when a = +-1/2
  std::optional<bool> on_branch;       // set when m = 1
  double branch_distance = 0;
};

// `qk_residual` is the caller-measured residual of the quasi-Killing equation
// for psi (zero for algebra-level synthetic data); the precondition fails
// above 1e-6.
QuasiKillingConsequences quasi_killing_consequences(double a, double b, int m,
                                                    const CurvatureData& cd,
                                                    const CliffordRep& rep, const CVec& psi,
                                                    double qk_residual = 0.0);

// Quasi-Killing types (a, b) admissible on a 3-dimensional Sasakian manifold
// of scalar curvature S: always (-1/2, 3/4 - S/8), plus the pair
// ((-2 +- sqrt(4+2S))/4, (4 -+ sqrt(4+2S))/4) when 4 + 2S >= 0.
std::vector<std::pair<double, double>> sasakian3_qk_types(double scal);

// Dirac eigenvalue of a quasi-Killing spinor: -(2m+1) a - b.
double qk_dirac_eigenvalue(int m, double a, double b);

// Weak-Killing criterion for types (+-1/2, b) in dimension 2m+1 >= 5: the
// unique admissible b, and the eta-Einstein form the geometry must have.
struct WkTypeCriterion {
  double required_b = 0;      // -sign(a) (2m^2 - m - 2) / (4(m-1))
  bool is_wk = false;
  bool killing_case = false;  // b = 0: plain Killing spinor (Einstein geometry)
  double ric_g_coef = 0;      // (2 - m)/(m - 1)
  double ric_eta_coef = 0;    // (2m^2 - m - 2)/(m - 1)
  double scal = 0;            // 2m/(m - 1)
};
WkTypeCriterion wk_criterion(double a, double b, int m);

// ---- homothetic deformation of the Reeb direction ----
// g~ = a^-2 g + (a^-4 - a^-2) eta (x) eta, with adapted orthonormal frame
// E_l -> a E_l (transverse) and xi -> a^2 xi.

struct DeformationResult {
  double a = 1;
  AlmostContactStructure structure;  // on the deformed model
  double tensor_residual = 0;        // frame identities of the transformed tensors
};
DeformationResult deform(const AlmostContactStructure& s, double a);

// Adapted-frame Ricci / scalar curvature of the deformed metric: transverse
// block a^2 Ric + 2(a^2-1) Id, Reeb entry 2m.
Mat deformed_ricci(const Mat& ric, int m, double a);
double deformed_scal(double scal, int m, double a);

// Deformed Christoffel tensor in the deformed adapted frame (gamma(i,k,j)
// indexing as in ConnectionData).
Tensor3 deformed_christoffel(const Tensor3& gamma, int m, double a);

// Quasi-Killing type of a transferred Killing spinor with Killing number
// kappa = +-1/2: (kappa, kappa (m+1)(a^2 - 1)).
std::pair<double, double> transferred_type(int m, double a, double kappa);

// a^2 values at which the transferred spinor family turns weak-Killing
// without being Killing: m/(2(m^2-1)) for m >= 2; the two roots of
// 8a^2 - 2 = 1 +- sqrt(5) for m = 1.
std::vector<double> wk_deformation_thresholds(int m);

// Operator identity tying the deformed spin connection to the base one on
// constant-bracket models:
//   Omega~_l = a Omega_l - (a-1)/2 act(phi E_l) act(xi)   (transverse l)
//   Omega~_xi = a^2 Omega_xi - (a^2-1)/2 act(Phi).
double deformation_transfer_residual(const FrameModel& base, const FrameModel& deformed,
                                     const Mat& phi, double a, int chirality = 1);

// ---- circle bundle over a Kaehler-Einstein base ----

struct CircleBundleData {
  int m = 0;
  double base_scal = 0;
  Mat omega;            // Kaehler form components, Reeb row/column zero
  Tensor3 gamma;        // bundle-frame Christoffels (transverse part normal)
  CurvatureData data;   // eta-Einstein curvature of the total space
  double kaehler_residual = 0;  // omega^T omega = Id - eta eta^T, |omega|^2 = 2m
};

// Total space of the unit circle bundle with connection curvature -2 omega;
// Ricci = (S/2m - 2) g + (2m + 2 - S/2m) eta (x) eta.  Throws on S = 0.
CircleBundleData circle_bundle_curvature(int m, double base_scal, const Mat& omega);

// eta-Einstein Sasakian curvature data in an adapted frame: Ric = g_coef g +
// eta_coef eta (x) eta with g_coef + eta_coef = 2m (required), Reeb-plane
// sectional curvatures one, and nabla Ric the Sasakian closed form.
CurvatureData synthetic_sasakian_curvature(int m, double g_coef, double eta_coef);

// Curvature matrices of the connection nabla - a X. - b eta(X) xi. acting on
// spinors, and their projections to the extreme eigenbundles picked by
// sign(a) (none for m = 1, where flatness is unprojected).  The two
// m = 1 coefficient fields expand R-bar(E_u,E_v) over the Clifford basis:
// the transverse pair carries S/4 - 1 - 2a^2 + 2b, the mixed pairs
// -1/2 + 2a^2 + 2ab + b.
struct ModifiedConnectionCurvature {
  double unprojected_max = 0;
  double projected_max = 0;
  std::vector<int> projected_onto;
  double plane_coefficient = 0;
  double mixed_coefficient = 0;
};
ModifiedConnectionCurvature flat_connection_check(double a, double b, const CurvatureData& cd,
                                                  const CliffordRep& rep,
                                                  const SasakianDecomposition& dec);

}  // namespace spinwork

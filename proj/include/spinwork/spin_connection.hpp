#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spinwork/clifford.hpp"
#include "spinwork/frame_geometry.hpp"
#include "spinwork/numdiff.hpp"

namespace spinwork {

enum class EquationKind { Eigenspinor, Killing, QuasiKilling, WeakKilling, EinsteinDirac };

// Parameters of a first-order spinor field equation.  `lambda` is the Dirac
// eigenvalue (Eigenspinor, WeakKilling, EinsteinDirac), (a, b) the
// quasi-Killing type (Killing uses b alone), `eps` the sign in
// Ric - (S/2) g = (eps/4) T.
struct EquationSpec {
  EquationKind kind = EquationKind::Eigenspinor;
  double lambda = 0.0;
  double a = 0.0;
  double b = 0.0;
  int eps = +1;
};

// Spinor field given in chart coordinates.  `partials` is optional; when
// absent, derivatives fall back to central differences of `eval`.  Column a
// of partials(x) holds d(psi)/dx_a.  `claimed` is metadata recording which
// equation the field is supposed to solve.
struct SpinorField {
  int spinor_dim = 0;
  std::function<CVec(const Vec&)> eval;
  std::function<CMat(const Vec&)> partials;
  EquationSpec claimed;
};

SpinorField constant_field(const CVec& psi0);

// psi(x) = exp(sum_a x_a M_a) psi0 with closed-form partials (derivative of
// the matrix exponential via the ad-series).
SpinorField exp_field(const std::vector<CMat>& M, const CVec& psi0);

struct GeometryContext {
  FrameModel model;
  CliffordRep rep;
  GeomPath path = GeomPath::Auto;
  double h = kFdStep1;  // step for spinor partials when the field has none
};

GeometryContext make_context(const FrameModel& model, int chirality = 1);
// Same, but the chart is replaced by exponential coordinates of the bracket
// data.  Group-invariant fields (exp_field over equivariant matrices) are
// exact only in this chart.
GeometryContext make_exp_context(const FrameModel& model, int chirality = 1);

// Omega_k = -(1/2) sum_{i<j} Gamma(i,k,j) E_i E_j, one matrix per frame leg.
std::vector<CMat> spin_connection_matrices(const GeometryContext& ctx, const Vec& x);

CVec frame_derivative(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int k);
CVec cov_deriv(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int k);
std::vector<CVec> cov_derivs(const GeometryContext& ctx, const SpinorField& f, const Vec& x);
CVec dirac(const GeometryContext& ctx, const SpinorField& f, const Vec& x);

// psi |-> D psi as a field; its own derivatives use the wider second-pass step.
SpinorField dirac_field(const GeometryContext& ctx, const SpinorField& f);
CVec dirac_squared(const GeometryContext& ctx, const SpinorField& f, const Vec& x);
// Delta psi = -sum_u nabla_u nabla_u psi + sum_u nabla_{nabla_{E_u} E_u} psi
CVec laplacian(const GeometryContext& ctx, const SpinorField& f, const Vec& x);
// |4 D^2 psi - 4 Delta psi - S psi| / (1 + |psi|)
double lichnerowicz_residual(const GeometryContext& ctx, const SpinorField& f, const Vec& x);

// R(E_i,E_j)psi from commuted second covariant derivatives, and the algebraic
// expression -(1/2) sum_{u<v} R_{uvij} E_u E_j psi built from curvature data.
CVec curvature_action(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int i, int j);
CVec curvature_action_algebraic(const GeometryContext& ctx, const CurvatureData& cd,
                                const CVec& psi, int i, int j);

// (1/2) Ric(E_k) psi - { D(nabla_k psi) - nabla_k(D psi) - sum_u E_u nabla_{nabla_{E_u} E_k} psi }
CVec half_ricci_residual(const GeometryContext& ctx, const SpinorField& f, const Vec& x, int k);

// T(k,l) = Re ( E_k nabla_l psi + E_l nabla_k psi , psi )
Mat energy_momentum(const GeometryContext& ctx, const SpinorField& f, const Vec& x);
// divergence sum_i T_{ij;i}, by covariant differentiation of T ...
Vec energy_momentum_divergence(const GeometryContext& ctx, const SpinorField& f, const Vec& x);
// ... and by the Dirac-operator expression
//   sum_j { (nabla_j D psi, psi) - (nabla_j psi, D psi) - (E_j D^2 psi, psi) } E^j.
Vec energy_momentum_divergence_dirac_form(const GeometryContext& ctx, const SpinorField& f,
                                          const Vec& x);

// The 1-form and symmetric tensor determined by any field of the shape
// nabla_X psi = n a(X) psi + b(X) psi + X a psi:
//   a = d(|psi|^2) / (2(n-1)|psi|^2),   b = -T_psi / (2 |psi|^2).
Vec spinor_alpha_form(const GeometryContext& ctx, const SpinorField& f, const Vec& x);
Mat spinor_beta_tensor(const GeometryContext& ctx, const SpinorField& f, const Vec& x);

struct ResidualReport {
  EquationKind kind = EquationKind::Eigenspinor;
  std::vector<double> per_point;  // relative residuals, ordered by sample index
  double max_residual = 0.0;
  uint64_t seed = 0;
  double h = kFdStep1;
  double tolerance = 0.0;
  bool pass = false;
};

// Relative residual of the defining equation at x: per frame direction,
// |lhs - rhs| / (1 + |nabla psi| + |coefficients| |psi|), maximised over
// directions.  EinsteinDirac adds the algebraic tensor residual.
double equation_residual(const GeometryContext& ctx, const SpinorField& f,
                         const EquationSpec& eq, const Vec& x);
ResidualReport residual_report(const GeometryContext& ctx, const SpinorField& f,
                               const EquationSpec& eq, int samples, uint64_t seed, double tol);

// Pointwise frame decomposition nabla_X psi = omega(X) psi + gamma(X) psi on
// 3-manifolds (the real spinor module is 1 + 3 dimensional), plus the
// eigenspinor refinement gamma = beta + tau with tau determined by
// alpha = omega/2 through the volume form.
struct SpinorShape3d {
  Vec omega;
  Mat gamma;  // column k = frame components of gamma(E_k)
  double reconstruction_residual = 0.0;
  Vec alpha;
  Mat beta;                      // symmetric part of gamma
  Mat tau;                       // skew part of gamma
  double trace_h = 0.0;          // -Tr(beta); equals the Dirac eigenvalue function
  double dual_residual = 0.0;    // | tau + chirality * (*alpha) |
};
SpinorShape3d decompose_3d(const GeometryContext& ctx, const SpinorField& f, const Vec& x);

// Group-invariant fields on constant-bracket models: matrices M_k with
// E_k(psi) = M_k psi realizing nabla_k psi = A_k psi; the field exists iff
// [M_u, M_v] = -sum_w C(w,u,v) M_w, and then psi(x) = exp(sum x_k M_k) psi0
// in exponential coordinates.
std::vector<CMat> equivariant_matrices(const GeometryContext& ctx, const std::vector<CMat>& A);
// A_k = a E_k + b delta_{k,xi} E_xi (the quasi-Killing ansatz)
std::vector<CMat> quasi_killing_matrices(const GeometryContext& ctx, double a, double b);
double flatness_residual(const GeometryContext& ctx, const std::vector<CMat>& M);
SpinorField equivariant_field(const GeometryContext& ctx, const std::vector<CMat>& M,
                              const CVec& psi0);

// Scalar calculus through the frame.
double frame_scalar_derivative(const GeometryContext& ctx,
                               const std::function<double(const Vec&)>& f, const Vec& x, int k,
                               double h = kFdStep1);
Vec frame_scalar_gradient(const GeometryContext& ctx, const std::function<double(const Vec&)>& f,
                          const Vec& x, double h = kFdStep1);
// Delta f = -sum_u E_u(E_u f) + sum_u (nabla_{E_u} E_u) f
double scalar_laplacian(const GeometryContext& ctx, const std::function<double(const Vec&)>& f,
                        const Vec& x);

// Pointwise eigenvalue bound for an eigenspinor of eigenvalue lambda:
//   lambda^2 >= S/4 + |T|^2/(4|psi|^4) + Delta(|psi|^2)/(2|psi|^2)
//              + n |d|psi|^2|^2 / (4(n-1)|psi|^4).
struct EigenvalueBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
};
EigenvalueBound eigenvalue_bound(const GeometryContext& ctx, const SpinorField& f, double lambda,
                                 const Vec& x);

}  // namespace spinwork

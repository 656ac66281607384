#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinwork/linalg.hpp"
#include "spinwork/numdiff.hpp"

namespace spinwork {

// Constant frame brackets [E_u, E_v] = sum_w c(w,u,v) E_w.
struct StructureConstants {
  int dim = 0;
  Tensor3 c;
  double jacobi_residual() const;
};

// Orthonormal frame in a coordinate chart.  Columns of frame(x) are the
// coordinate components of the frame vectors; metric(x) is the coordinate
// metric (so frame(x)^T metric(x) frame(x) = Id).
struct ChartFrame {
  int dim = 0;
  std::function<Mat(const Vec&)> frame;
  std::function<Mat(const Vec&)> metric;
  // Optional closed-form partials d_a (E_u)^b as partials(x)(a,b,u); when
  // present, frame commutators are computed without finite differences.
  std::function<Tensor3(const Vec&)> frame_partials;
  // Optional closed-form scalar curvature (tightens derived quantities that
  // need derivatives of S).
  std::function<double(const Vec&)> scal_closed;
  Vec lo, hi;  // sampling box
};

struct FrameModel {
  std::string name;
  int dim = 0;
  std::optional<StructureConstants> sc;
  std::optional<ChartFrame> chart;
  std::vector<FrameModel> factors;  // non-empty: Riemannian product of these

  // metadata consumed by the obstruction scans / suites
  bool compact = false;
  bool homogeneous = false;
  bool conformally_flat = false;
  bool parallel_one_form = false;
  bool einstein = false;
  int sasaki_xi = -1;  // index of the Reeb vector in an adapted frame, else -1
  std::map<std::string, double> params;

  bool is_product() const { return !factors.empty(); }
};

// Which computation path to use for frame commutators.
enum class GeomPath {
  Auto,         // closed form when available, else finite differences
  Exact,        // structure constants / closed-form partials only (throws if absent)
  ChartFd,      // finite-difference commutators in the chart
};

struct ConnectionData {
  Vec point;
  Tensor3 gamma;  // gamma(i,k,j): nabla_{E_k} E_j = sum_i gamma(i,k,j) E_i
};

struct CurvatureData {
  Vec point;
  Tensor4 R;       // R(i,j,k,l) = -g(R(E_i,E_j)E_k, E_l)
  Mat ric;         // ric(j,l) = sum_u R(u,j,u,l)
  double scal = 0;
  double ric_norm2 = 0;
  double trace_ric3 = 0;
  Tensor3 ric_cov;  // ric_cov(i,j,k) = R_{ij;k}
  Vec grad_s;       // frame components E_k(S)
  Mat hess_s;
  double lap_s = 0;  // -trace Hess S
  bool has_derivatives = true;
};

// Frame commutator coefficients at x (constant for structure-constant models).
Tensor3 structure_constants_at(const FrameModel& m, const Vec& x,
                               GeomPath path = GeomPath::Auto, double h = kFdStep1);

ConnectionData christoffel(const FrameModel& m, const Vec& x,
                           GeomPath path = GeomPath::Auto, double h = kFdStep1);

CurvatureData curvature(const FrameModel& m, const Vec& x,
                        GeomPath path = GeomPath::Auto, double h = kFdStep1);

// |frame^T metric frame - Id| at x.
double orthonormality_residual(const FrameModel& m, const Vec& x);

// Conformal change g~ = w * g with rescaled orthonormal frame w^{-1/2} E_u.
struct ConformalFactor {
  std::function<double(const Vec&)> w;
  std::function<Vec(const Vec&)> grad_w;
};
FrameModel conformal_rescale(const FrameModel& m, const ConformalFactor& f,
                             const std::string& name);

// D-homothetic transform of a structure-constant model with adapted Sasakian
// frame: E_l -> a E_l (transverse), xi -> a^2 xi, realized on the brackets.
FrameModel deformed_model(const FrameModel& base, double a2, const std::string& name);

FrameModel product_model(const FrameModel& a, const FrameModel& b, const std::string& name = "");

// Named model catalog; parameter keys: a2 (deformed models), c (conformal
// factor), q (torus dimension), k and radius (spheres).
FrameModel catalog(const std::string& name, const std::map<std::string, double>& params = {});

// Attaches the exponential-coordinate chart to a structure-constant model
// (left-invariant frame components B(ad_x)^{-1}, metric B^T B).  No-op if the
// model already has a chart.
void ensure_chart(FrameModel& m);

// Deterministic sample points inside the chart box (10% margin).
std::vector<Vec> sample_points(const FrameModel& m, int count, uint64_t seed);

}  // namespace spinwork

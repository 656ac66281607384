#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace spinwork {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx I{0.0, 1.0};

// Hermitian inner product, linear in the first slot: <a,b> = sum_i a_i conj(b_i).
inline cplx herm(const CVec& a, const CVec& b) { return b.dot(a); }

// Real inner product (a,b) = Re<a,b>.
inline double re_inner(const CVec& a, const CVec& b) { return herm(a, b).real(); }

// Dense rank-3 array of doubles, sized n^3; index names follow usage at call sites.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), d_(static_cast<size_t>(n) * n * n, 0.0) {}
  double& operator()(int a, int b, int c) { return d_[idx(a, b, c)]; }
  double operator()(int a, int b, int c) const { return d_[idx(a, b, c)]; }
  int dim() const { return n_; }
  double max_abs() const {
    double m = 0;
    for (double v : d_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  size_t idx(int a, int b, int c) const {
    return (static_cast<size_t>(a) * n_ + b) * n_ + c;
  }
  int n_ = 0;
  std::vector<double> d_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), d_(static_cast<size_t>(n) * n * n * n, 0.0) {}
  double& operator()(int a, int b, int c, int e) { return d_[idx(a, b, c, e)]; }
  double operator()(int a, int b, int c, int e) const { return d_[idx(a, b, c, e)]; }
  int dim() const { return n_; }

 private:
  size_t idx(int a, int b, int c, int e) const {
    return ((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + e;
  }
  int n_ = 0;
  std::vector<double> d_;
};

}  // namespace spinwork

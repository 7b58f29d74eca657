#pragma once

// ARD Matern 5/2 covariance:
//   k(x, y) = a (1 + sqrt(5) r + 5 r^2 / 3) exp(-sqrt(5) r),
//   r^2 = sum_k (x_k - y_k)^2 / theta_k^2.

#include "planesearch/types.hpp"

#include <cmath>
#include <stdexcept>

namespace planesearch {

template <typename Scalar>
struct BasicKernelHyperparams {
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Scalar amplitude;
  VectorType length_scales;

  int dim() const { return static_cast<int>(length_scales.size()); }

  void validate() const {
    if (!(amplitude > Scalar(0))) throw std::invalid_argument("kernel amplitude must be > 0");
    if (length_scales.size() == 0) throw std::invalid_argument("kernel needs at least one length scale");
    for (Index k = 0; k < length_scales.size(); ++k)
      if (!(length_scales(k) > Scalar(0))) throw std::invalid_argument("kernel length scales must be > 0");
  }
};

using KernelHyperparams = BasicKernelHyperparams<double>;

namespace detail {

template <typename Scalar>
Scalar matern52_profile(Scalar r) {
  using std::exp;
  using std::sqrt;
  const Scalar s5r = sqrt(Scalar(5)) * r;
  return (Scalar(1) + s5r + Scalar(5) * r * r / Scalar(3)) * exp(-s5r);
}

// -(1/r) dk/dr divided by a: (5/3)(1 + sqrt(5) r) exp(-sqrt(5) r).
template <typename Scalar>
Scalar matern52_slope(Scalar r) {
  using std::exp;
  using std::sqrt;
  const Scalar s5r = sqrt(Scalar(5)) * r;
  return Scalar(5) / Scalar(3) * (Scalar(1) + s5r) * exp(-s5r);
}

template <typename DerivedX, typename DerivedY, typename Scalar>
Scalar scaled_distance(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
                       const BasicKernelHyperparams<Scalar>& h) {
  using std::sqrt;
  return sqrt(((x - y).array() / h.length_scales.array()).square().sum());
}

}  // namespace detail

template <typename DerivedX, typename DerivedY, typename Scalar>
Scalar kernel(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
              const BasicKernelHyperparams<Scalar>& h) {
  if (x.size() != y.size() || x.size() != h.length_scales.size())
    throw std::invalid_argument("kernel: dimension mismatch");
  return h.amplitude * detail::matern52_profile(detail::scaled_distance(x, y, h));
}

/// Gradient of k(x, y) with respect to x.
template <typename DerivedX, typename DerivedY, typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> kernel_gradient(const Eigen::MatrixBase<DerivedX>& x,
                                                         const Eigen::MatrixBase<DerivedY>& y,
                                                         const BasicKernelHyperparams<Scalar>& h) {
  const Scalar r = detail::scaled_distance(x, y, h);
  const Scalar c = -h.amplitude * detail::matern52_slope(r);
  return c * ((x - y).array() / h.length_scales.array().square()).matrix();
}

/// Gram matrix over the columns of `points` (n x N).
Matrix kernel_matrix(const Eigen::Ref<const Matrix>& points, const KernelHyperparams& h);

/// Cross-covariance between the columns of `points` (n x N) and the columns
/// of `queries` (n x M); result is N x M.
Matrix cross_kernel(const Eigen::Ref<const Matrix>& points, const Eigen::Ref<const Matrix>& queries,
                    const KernelHyperparams& h);

}  // namespace planesearch

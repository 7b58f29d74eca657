#pragma once

#include "planesearch/gp.hpp"
#include "planesearch/plane.hpp"
#include "planesearch/random.hpp"

#include <cmath>
#include <numbers>

namespace planesearch {

enum class GradientMode {
  analytic,           // closed-form derivative of the posterior and of EI
  central_difference  // (EI(x + h e_k) - EI(x - h e_k)) / 2h
};

struct AcquisitionConfig {
  int restarts = 10;
  int max_iterations = 200;
  double gradient_step = 1e-5;
  int lattice_side = 5;  // the plane integral uses lattice_side^2 samples
  GradientMode gradient = GradientMode::analytic;

  void validate() const;
};

template <typename Scalar>
Scalar normal_pdf(Scalar z) {
  using std::exp;
  using std::sqrt;
  return exp(-z * z / Scalar(2)) / sqrt(Scalar(2) * std::numbers::pi_v<Scalar>);
}

template <typename Scalar>
Scalar normal_cdf(Scalar z) {
  using std::erfc;
  using std::sqrt;
  return erfc(-z / sqrt(Scalar(2))) / Scalar(2);
}

/// Closed-form expected improvement for maximization:
/// sigma * (gamma Phi(gamma) + phi(gamma)), gamma = (mean - best) / sigma,
/// and zero when sigma is zero.
template <typename Scalar>
Scalar expected_improvement(Scalar mean, Scalar sigma, Scalar best) {
  if (!(sigma > Scalar(0))) return Scalar(0);
  const Scalar gamma = (mean - best) / sigma;
  const Scalar ei = sigma * (gamma * normal_cdf(gamma) + normal_pdf(gamma));
  return ei > Scalar(0) ? ei : Scalar(0);
}

/// EI of x against the posterior mean at x_plus.
double expected_improvement(const FittedModel& model, const Eigen::Ref<const Vector>& x,
                            const Eigen::Ref<const Vector>& x_plus);

/// EI of x against a fixed incumbent value mu(x+).
double expected_improvement_at(const FittedModel& model, const Eigen::Ref<const Vector>& x, double best_mean);

/// EI and its gradient with respect to x.
double expected_improvement_gradient(const FittedModel& model, const Eigen::Ref<const Vector>& x,
                                     double best_mean, const AcquisitionConfig& config, Vector& gradient);

/// Global maximizer of EI over X by multi-start bounded quasi-Newton ascent.
Vector maximize_ei(const FittedModel& model, const Eigen::Ref<const Vector>& x_plus, const AcquisitionConfig& config,
                   RandomSource& rng);

/// Lattice coordinates {-1, -1 + d, ..., 1}^2 used to average EI over a plane.
std::vector<PlaneLocalCoord> acquisition_lattice(int lattice_side);

/// Mean EI over the plane lattice; lattice points outside X are clamped into X.
double plane_acquisition(const FittedModel& model, const Plane& plane, const Eigen::Ref<const Vector>& x_plus,
                         const AcquisitionConfig& config);

}  // namespace planesearch

#include "planesearch/acquisition.hpp"

#include "planesearch/optimize.hpp"

#include <stdexcept>

namespace planesearch {

void AcquisitionConfig::validate() const {
  if (restarts < 1 || max_iterations < 1 || lattice_side < 1)
    throw std::invalid_argument("AcquisitionConfig: counts must be positive");
  if (!(gradient_step > 0.0)) throw std::invalid_argument("AcquisitionConfig: gradient_step must be > 0");
  if (lattice_side % 2 == 0) throw std::invalid_argument("AcquisitionConfig: lattice_side must be odd");
}

double expected_improvement_at(const FittedModel& model, const Eigen::Ref<const Vector>& x, double best_mean) {
  const PosteriorValue p = posterior(model, x);
  return expected_improvement(p.mean, std::sqrt(p.variance), best_mean);
}

double expected_improvement(const FittedModel& model, const Eigen::Ref<const Vector>& x,
                            const Eigen::Ref<const Vector>& x_plus) {
  return expected_improvement_at(model, x, posterior(model, x_plus).mean);
}

double expected_improvement_gradient(const FittedModel& model, const Eigen::Ref<const Vector>& x,
                                     double best_mean, const AcquisitionConfig& config, Vector& gradient) {
  if (config.gradient == GradientMode::central_difference) {
    gradient.resize(x.size());
    Vector probe = x;
    for (Index k = 0; k < x.size(); ++k) {
      const double h = config.gradient_step;
      probe(k) = x(k) + h;
      const double up = expected_improvement_at(model, probe, best_mean);
      probe(k) = x(k) - h;
      const double down = expected_improvement_at(model, probe, best_mean);
      probe(k) = x(k);
      gradient(k) = (up - down) / (2.0 * h);
    }
    return expected_improvement_at(model, x, best_mean);
  }

  const PosteriorGradient p = posterior_with_gradient(model, x);
  if (!(p.variance > 0.0)) {
    gradient = Vector::Zero(x.size());
    return 0.0;
  }
  const double sigma = std::sqrt(p.variance);
  const double gamma = (p.mean - best_mean) / sigma;
  // d EI = Phi(gamma) d mu + phi(gamma) d sigma
  gradient = normal_cdf(gamma) * p.mean_gradient + normal_pdf(gamma) * (p.variance_gradient / (2.0 * sigma));
  return expected_improvement(p.mean, sigma, best_mean);
}

Vector maximize_ei(const FittedModel& model, const Eigen::Ref<const Vector>& x_plus, const AcquisitionConfig& config,
                   RandomSource& rng) {
  config.validate();
  const int n = model.space().dim();
  const double best_mean = posterior(model, x_plus).mean;

  std::vector<Vector> starts;
  for (int r = 0; r < config.restarts; ++r) starts.push_back(rng.uniform_point(n));
  Vector jittered(n);
  for (int k = 0; k < n; ++k) jittered(k) = x_plus(k) + rng.uniform(-0.05, 0.05);
  starts.push_back(clamp_to_unit(jittered));

  const Vector lower = Vector::Zero(n);
  const Vector upper = Vector::Ones(n);
  optim::BoundedOptions options;
  options.max_iterations = config.max_iterations;

  auto negated = [&](const Vector& x, Vector& grad) {
    const double ei = expected_improvement_gradient(model, x, best_mean, config, grad);
    grad = -grad;
    return -ei;
  };

  Vector best_x = starts.front();
  double best_value = -1.0;
  for (const Vector& start : starts) {
    const auto result = optim::minimize_bounded(negated, start, lower, upper, options);
    const double value = -result.value;
    if (value > best_value) {
      best_value = value;
      best_x = result.x;
    }
  }
  return clamp_to_unit(best_x);
}

std::vector<PlaneLocalCoord> acquisition_lattice(int lattice_side) {
  if (lattice_side < 1 || lattice_side % 2 == 0) throw std::invalid_argument("acquisition_lattice: side must be odd");
  std::vector<PlaneLocalCoord> coords;
  const int half = lattice_side / 2;
  const double step = half > 0 ? 1.0 / half : 0.0;
  for (int i = -half; i <= half; ++i)
    for (int j = -half; j <= half; ++j) coords.push_back(PlaneLocalCoord{i * step, j * step});
  return coords;
}

double plane_acquisition(const FittedModel& model, const Plane& plane, const Eigen::Ref<const Vector>& x_plus,
                         const AcquisitionConfig& config) {
  config.validate();
  const double best_mean = posterior(model, x_plus).mean;
  const auto lattice = acquisition_lattice(config.lattice_side);
  Matrix queries(plane.dim(), static_cast<Index>(lattice.size()));
  for (std::size_t j = 0; j < lattice.size(); ++j)
    queries.col(static_cast<Index>(j)) = clamp_to_unit(plane.point(lattice[j]));
  double total = 0.0;
  for (const PosteriorValue& p : posterior_batch(model, queries))
    total += expected_improvement(p.mean, std::sqrt(p.variance), best_mean);
  return total / static_cast<double>(lattice.size());
}

}  // namespace planesearch

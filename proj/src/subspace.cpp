#include "planesearch/subspace.hpp"

#include "planesearch/optimize.hpp"

#include <cmath>
#include <limits>

namespace planesearch {

namespace {

// Scale d so that c + d stays inside X.
Vector fit_positive(const Vector& c, const Vector& d) { return feasible_step(c, d) * d; }

}  // namespace

double plane_objective(const FittedModel& model, const Vector& center, const Vector& u, const Vector& v,
                       double neg_u_scale, double best_mean, const AcquisitionConfig& config,
                       const PlaneOptions& options, Vector* gradient) {
  const auto lattice = acquisition_lattice(config.lattice_side);
  const Plane plane{center, u, v, neg_u_scale, 1.0, options.boundary_mode};
  const double count = static_cast<double>(lattice.size());

  double total = 0.0;
  if (gradient) gradient->setZero(v.size());
  Vector ei_grad;
  for (const PlaneLocalCoord& coord : lattice) {
    const Vector raw = plane.point(coord);
    const Vector x = clamp_to_unit(raw);
    if (!gradient) {
      total += expected_improvement_at(model, x, best_mean);
      continue;
    }
    total += expected_improvement_gradient(model, x, best_mean, config, ei_grad);
    if (coord.t == 0.0) continue;
    for (Index k = 0; k < x.size(); ++k)
      if (raw(k) == x(k)) (*gradient)(k) += coord.t * ei_grad(k);
  }
  const double dot = u.dot(v);
  if (gradient) {
    *gradient /= count;
    *gradient -= 2.0 * options.penalty_weight * dot * u;
  }
  return total / count - options.penalty_weight * dot * dot;
}

PlaneConstruction construct_plane_detailed(const FittedModel& model, const AcquisitionConfig& config,
                                           RandomSource& rng, const PlaneOptions& options) {
  config.validate();
  const Dataset& data = model.dataset();
  if (data.size() < 2 || data.records().empty())
    throw InvalidState("construct_plane: need at least two points and one record");
  const int n = data.dim();

  PlaneConstruction out;
  out.x_plus = data.point(current_best(model, options.best_mode));
  const Vector& c = out.x_plus;
  const double best_mean = posterior(model, c).mean;

  Vector u = maximize_ei(model, c, config, rng) - c;
  if (u.norm() < 1e-6) {
    Vector dir = rng.normal_vector(n);
    dir *= options.degenerate_length / dir.norm();
    u = fit_positive(c, dir);
    if (u.norm() == 0.0) u = fit_positive(c, -dir);
  }
  out.x_ei = c + u;

  const double neg_u_scale =
      options.boundary_mode == BoundaryMode::scale_half_diagonal ? feasible_step(c, -u) : 1.0;

  Vector bound(n);
  for (int k = 0; k < n; ++k) bound(k) = std::min(c(k), 1.0 - c(k));
  const Vector lower = -bound;

  optim::BoundedOptions bo;
  bo.max_iterations = config.max_iterations;
  auto negated = [&](const Vector& v, Vector& grad) {
    const double value = plane_objective(model, c, u, v, neg_u_scale, best_mean, config, options, &grad);
    grad = -grad;
    return -value;
  };

  Vector best_v;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    Vector start(n);
    for (int k = 0; k < n; ++k) start(k) = rng.uniform(-bound(k), bound(k));
    out.start_objectives.push_back(
        plane_objective(model, c, u, start, neg_u_scale, best_mean, config, options, nullptr));
    const auto result = optim::minimize_bounded(negated, start, lower, bound, bo);
    const double value = -result.value;
    out.final_objectives.push_back(value);
    if (std::isfinite(value) && value > best_value) {
      best_value = value;
      best_v = result.x;
    }
  }
  if (!std::isfinite(best_value)) throw ConstructionFailure("construct_plane: no restart produced a finite objective");
  out.objective = best_value;

  // Exact orthogonality, then keep c +- v inside X.
  Vector v = best_v;
  const double uu = u.squaredNorm();
  if (uu > 0.0) v -= (u.dot(v) / uu) * u;
  v *= std::min(feasible_step(c, v), feasible_step(c, -v));

  out.plane = clip_negative_vertices(Plane{c, u, v, 1.0, 1.0, options.boundary_mode}, data.space());
  return out;
}

Plane construct_plane(const FittedModel& model, const AcquisitionConfig& config, RandomSource& rng,
                      const PlaneOptions& options) {
  return construct_plane_detailed(model, config, rng, options).plane;
}

std::pair<Vector, Vector> random_orthonormal_pair(int dim, RandomSource& rng) {
  if (dim < 1) throw std::invalid_argument("random_orthonormal_pair: dimension must be >= 1");
  for (;;) {
    Vector a = rng.normal_vector(dim);
    Vector b = rng.normal_vector(dim);
    const double na = a.norm();
    if (!(na > 1e-12)) continue;
    a /= na;
    if (dim == 1) return {a, Vector::Zero(1)};
    b -= a.dot(b) * a;
    const double nb = b.norm();
    if (!(nb > 1e-12)) continue;
    b /= nb;
    b -= a.dot(b) * a;  // second pass for exact orthogonality
    b /= b.norm();
    return {a, b};
  }
}

Plane random_plane(const Eigen::Ref<const Vector>& x_plus, RandomSource& rng, BoundaryMode mode) {
  const int n = static_cast<int>(x_plus.size());
  if (n < 2) throw std::invalid_argument("random_plane: dimension must be >= 2");
  const SearchSpace space(n);
  space.require(x_plus, "random_plane: center");
  auto [u, v] = random_orthonormal_pair(n, rng);
  Plane plane{x_plus, u, v, 1.0, 1.0, mode};
  if (mode == BoundaryMode::scale_half_diagonal) {
    plane.u = fit_positive(plane.center, u);
    plane.v = fit_positive(plane.center, v);
  }
  return clip_negative_vertices(std::move(plane), space);
}

Plane initial_plane(const SearchSpace& space, RandomSource& rng, double half_extent) {
  if (!(half_extent > 0.0 && half_extent <= 0.5))
    throw std::invalid_argument("initial_plane: half_extent must be in (0, 0.5]");
  auto [u, v] = random_orthonormal_pair(space.dim(), rng);
  return Plane{space.center(), half_extent * u, half_extent * v, 1.0, 1.0, BoundaryMode::scale_half_diagonal};
}

Line construct_line(const FittedModel& model, const AcquisitionConfig& config, RandomSource& rng,
                    BestMode best_mode) {
  const Vector x_plus = model.dataset().point(current_best(model, best_mode));
  return Line{x_plus, maximize_ei(model, x_plus, config, rng)};
}

Line initial_line(const SearchSpace& space, RandomSource& rng) {
  return Line{space.center(), rng.uniform_point(space.dim())};
}

}  // namespace planesearch

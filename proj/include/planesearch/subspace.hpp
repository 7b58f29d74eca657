#pragma once

// Subspace constructors: the acquisition-driven plane, the random-plane and
// line-search baselines, and the data-free initial plane.

#include "planesearch/acquisition.hpp"
#include "planesearch/plane.hpp"

#include <stdexcept>

namespace planesearch {

struct PlaneOptions {
  double penalty_weight = 1000.0;  // weight of the soft (u . v)^2 orthogonality term
  BestMode best_mode = BestMode::posterior_mean;
  BoundaryMode boundary_mode = BoundaryMode::scale_half_diagonal;
  double degenerate_length = 0.1;  // length of the fallback u when x^EI ~ x+
};

class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything construct_plane computed on the way, for inspection and tests.
struct PlaneConstruction {
  Plane plane;
  Vector x_plus;
  Vector x_ei;
  /// Penalized objective at the selected v (before projection) and at the
  /// initial point of every restart.
  double objective = 0.0;
  std::vector<double> start_objectives;
  std::vector<double> final_objectives;
};

/// Penalized plane objective: plane_acquisition(P(c, u, v)) - w (u . v)^2.
/// Writes the gradient with respect to v when `gradient` is non-null.
double plane_objective(const FittedModel& model, const Vector& center, const Vector& u, const Vector& v,
                       double neg_u_scale, double best_mean, const AcquisitionConfig& config,
                       const PlaneOptions& options, Vector* gradient);

PlaneConstruction construct_plane_detailed(const FittedModel& model, const AcquisitionConfig& config,
                                           RandomSource& rng, const PlaneOptions& options = {});

Plane construct_plane(const FittedModel& model, const AcquisitionConfig& config, RandomSource& rng,
                      const PlaneOptions& options = {});

/// Plane centered at x_plus with random orthonormal half-diagonals.
Plane random_plane(const Eigen::Ref<const Vector>& x_plus, RandomSource& rng,
                   BoundaryMode mode = BoundaryMode::scale_half_diagonal);

/// Random orthonormal pair (u, v) in R^n; v is zero when n == 1.
std::pair<Vector, Vector> random_orthonormal_pair(int dim, RandomSource& rng);

/// Square centered at the middle of X with a random orientation.
Plane initial_plane(const SearchSpace& space, RandomSource& rng, double half_extent = 0.5);

Line construct_line(const FittedModel& model, const AcquisitionConfig& config, RandomSource& rng,
                    BestMode best_mode = BestMode::posterior_mean);

/// First line of a line-search run: from the center of X to a uniform random point.
Line initial_line(const SearchSpace& space, RandomSource& rng);

}  // namespace planesearch

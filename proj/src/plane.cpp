#include "planesearch/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace planesearch {

std::string to_string(BoundaryMode mode) {
  return mode == BoundaryMode::scale_half_diagonal ? "scale_half_diagonal" : "mask_outside";
}

BoundaryMode boundary_mode_from_string(const std::string& name) {
  if (name == "scale_half_diagonal") return BoundaryMode::scale_half_diagonal;
  if (name == "mask_outside") return BoundaryMode::mask_outside;
  throw std::invalid_argument("unknown boundary mode: " + name);
}

Vector Plane::point(const PlaneLocalCoord& coord) const {
  const double fu = coord.s >= 0.0 ? coord.s : neg_u_scale * coord.s;
  const double fv = coord.t >= 0.0 ? coord.t : neg_v_scale * coord.t;
  return center + fu * u + fv * v;
}

std::array<Vector, 5> Plane::representatives() const {
  return {point(0.0, 0.0), point(1.0, 0.0), point(-1.0, 0.0), point(0.0, 1.0), point(0.0, -1.0)};
}

double feasible_step(const Vector& c, const Vector& d) {
  double alpha = 1.0;
  for (Index k = 0; k < c.size(); ++k) {
    if (d(k) > 0.0) {
      alpha = std::min(alpha, (1.0 - c(k)) / d(k));
    } else if (d(k) < 0.0) {
      alpha = std::min(alpha, (0.0 - c(k)) / d(k));
    }
  }
  alpha = std::max(alpha, 0.0);
  // The division above can overshoot by an ulp; shrink until c + alpha d,
  // evaluated the way Plane::point evaluates it, lies in X.
  auto inside = [&](double a) {
    for (Index k = 0; k < c.size(); ++k) {
      const double x = c(k) + a * d(k);
      if (!(x >= 0.0 && x <= 1.0)) return false;
    }
    return true;
  };
  if (!inside(0.0)) return alpha;
  while (alpha > 0.0 && !inside(alpha)) alpha = std::nextafter(alpha, 0.0);
  return alpha;
}

Plane clip_negative_vertices(Plane plane, const SearchSpace& space) {
  if (plane.mode == BoundaryMode::mask_outside) return plane;
  space.require(plane.center, "clip_negative_vertices: center");
  auto scale_for = [&](const Vector& dir) {
    const double alpha = feasible_step(plane.center, -dir);
    // A zero half-diagonal has nothing to clip.
    return dir.cwiseAbs().maxCoeff() == 0.0 ? 1.0 : alpha;
  };
  plane.neg_u_scale = scale_for(plane.u);
  plane.neg_v_scale = scale_for(plane.v);
  return plane;
}

}  // namespace planesearch

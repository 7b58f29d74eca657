#pragma once

// Rhombus-shaped search planes P(c, u, v) with vertices {c +- u, c +- v},
// and the one-dimensional line subspace used by the line-search baseline.

#include "planesearch/types.hpp"

#include <array>
#include <string>

namespace planesearch {

enum class BoundaryMode {
  scale_half_diagonal,  // shrink negative half-diagonals so every vertex stays in X
  mask_outside,         // leave the plane as is; callers mask points outside X
};

std::string to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& name);

/// Rhombus coordinates: (+-1, 0) and (0, +-1) are the vertices.
struct PlaneLocalCoord {
  double s = 0.0;
  double t = 0.0;

  bool operator==(const PlaneLocalCoord&) const = default;
};

struct Plane {
  Vector center;
  Vector u;
  Vector v;
  double neg_u_scale = 1.0;  // the c - u vertex sits at c - neg_u_scale * u
  double neg_v_scale = 1.0;
  BoundaryMode mode = BoundaryMode::scale_half_diagonal;

  int dim() const { return static_cast<int>(center.size()); }

  /// c + f_u(s) u + f_v(t) v, with f scaling the negative half-axis.
  Vector point(const PlaneLocalCoord& coord) const;
  Vector point(double s, double t) const { return point(PlaneLocalCoord{s, t}); }

  /// c, c + u, c - a_u u, c + v, c - a_v v
  std::array<Vector, 5> representatives() const;

  bool operator==(const Plane&) const = default;
};

inline Vector plane_point(const Plane& plane, const PlaneLocalCoord& coord) { return plane.point(coord); }

/// In scale_half_diagonal mode, sets each negative-side scale to the largest
/// value in (0, 1] keeping the opposite vertex inside X. Requires c + u and
/// c + v already inside X. mask_outside planes are returned unchanged.
Plane clip_negative_vertices(Plane plane, const SearchSpace& space);

/// Largest alpha in [0, 1] with c + alpha * d inside [0,1]^n.
double feasible_step(const Vector& c, const Vector& d);

/// Segment { (1 - t) start + t end : t in [0,1] }.
struct Line {
  Vector start;  // x+
  Vector end;    // x^EI

  Vector point(double t) const { return (1.0 - t) * start + t * end; }
};

}  // namespace planesearch

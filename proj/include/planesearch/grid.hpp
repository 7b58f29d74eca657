#pragma once

// Zoomable grid over a plane. Level 0 spans the local square [-1, 1]^2; each
// click recenters the grid on the clicked cell and divides the spacing by the
// zoom factor. Coordinates are always recomputed from (s, t), never
// accumulated in design space.

#include "planesearch/plane.hpp"
#include "planesearch/preference.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace planesearch {

class RejectedChoice : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  int resolution = 5;  // odd, >= 3
  int levels = 4;      // clicks per plane
  double zoom_factor = 2.0;

  void validate() const;
  int radius() const { return (resolution - 1) / 2; }
  double base_spacing() const { return 2.0 / (resolution - 1); }
  double spacing(int level) const;

  bool operator==(const GridSpec&) const = default;
};

struct Cell {
  int i = 0;  // offset along s (the u axis)
  int j = 0;  // offset along t (the v axis)
  PlaneLocalCoord coord;
  Vector point;
  bool valid = false;
};

struct GridChoice {
  int level = 0;
  int i = 0;
  int j = 0;

  bool operator==(const GridChoice&) const = default;
};

class PlaneSession {
 public:
  PlaneSession(Plane plane, GridSpec spec);

  const Plane& plane() const { return plane_; }
  const GridSpec& spec() const { return spec_; }
  int level() const { return level_; }
  const PlaneLocalCoord& grid_center() const { return grid_center_; }
  const std::vector<GridChoice>& choices() const { return choices_; }
  bool completed() const { return level_ == spec_.levels; }
  const std::optional<Vector>& chosen_point() const { return chosen_point_; }
  double spacing() const { return spec_.spacing(level_); }

  /// resolution^2 cells, i outer and j inner, each from -r to +r.
  std::vector<Cell> cells() const;
  Cell cell(int i, int j) const;

  /// Zooms into cell (i, j). Throws std::invalid_argument for offsets outside
  /// the grid and RejectedChoice for cells outside X.
  void choose(int i, int j);

  /// Rebuilds a session from a recorded click history.
  static PlaneSession replay(Plane plane, GridSpec spec, const std::vector<GridChoice>& choices);

  bool operator==(const PlaneSession&) const = default;

 private:
  Plane plane_;
  GridSpec spec_;
  int level_ = 0;
  PlaneLocalCoord grid_center_;
  std::vector<GridChoice> choices_;
  std::optional<Vector> chosen_point_;
};

/// Cells of a session (free-function form).
std::vector<Cell> grid_cells(const PlaneSession& session);

/// Copy of the session advanced by one click.
PlaneSession choose(PlaneSession session, int i, int j);

/// Number of distinct local coordinates reachable by any click sequence.
long long reachable_set_size(const GridSpec& spec);

/// "chosen beats every plane representative" for a given chosen point; the
/// representatives coinciding with the winner, or lying outside X, are dropped.
PreferenceIntent plane_preference(const Plane& plane, const Vector& chosen,
                                  double dedup_tolerance = Dataset::default_dedup_tolerance);

/// Preference emitted by a completed session.
PreferenceIntent finalize_preference(const PlaneSession& session,
                                     double dedup_tolerance = Dataset::default_dedup_tolerance);

using GoodnessOracle = std::function<double(const Vector&)>;

enum class SimulationMode {
  discrete,   // greedy clicks through the zoomable grid
  continuous  // argmax over a fine lattice of the plane square
};

struct SimulationResult {
  Vector chosen;
  PreferenceIntent intent;
};

/// Simulated user: at each level clicks the valid cell with the highest
/// oracle value (ties go to the lowest enumeration index).
SimulationResult simulate_plane_session(const Plane& plane, const GridSpec& spec, const GoodnessOracle& oracle,
                                        SimulationMode mode = SimulationMode::discrete);

/// Simulated line search: argmax over t = k / (samples - 1).
SimulationResult simulate_line_session(const Line& line, int samples, const GoodnessOracle& oracle,
                                       double dedup_tolerance = Dataset::default_dedup_tolerance);

}  // namespace planesearch

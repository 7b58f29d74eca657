#include "planesearch/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace planesearch {

void GridSpec::validate() const {
  if (resolution < 3 || resolution % 2 == 0) throw std::invalid_argument("GridSpec: resolution must be odd and >= 3");
  if (levels < 1) throw std::invalid_argument("GridSpec: levels must be >= 1");
  if (!(zoom_factor > 1.0)) throw std::invalid_argument("GridSpec: zoom_factor must be > 1");
}

double GridSpec::spacing(int level) const { return base_spacing() / std::pow(zoom_factor, level); }

PlaneSession::PlaneSession(Plane plane, GridSpec spec) : plane_(std::move(plane)), spec_(spec) { spec_.validate(); }

Cell PlaneSession::cell(int i, int j) const {
  const int r = spec_.radius();
  if (std::abs(i) > r || std::abs(j) > r) throw std::invalid_argument("PlaneSession: cell offset outside the grid");
  const double h = spacing();
  Cell c;
  c.i = i;
  c.j = j;
  c.coord = PlaneLocalCoord{grid_center_.s + i * h, grid_center_.t + j * h};
  c.point = plane_.point(c.coord);
  c.valid = SearchSpace(plane_.dim()).contains(c.point);
  return c;
}

std::vector<Cell> PlaneSession::cells() const {
  if (completed()) throw InvalidState("PlaneSession: session already completed");
  const int r = spec_.radius();
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(spec_.resolution * spec_.resolution));
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j) out.push_back(cell(i, j));
  return out;
}

void PlaneSession::choose(int i, int j) {
  if (completed()) throw InvalidState("PlaneSession: session already completed");
  Cell c = cell(i, j);
  if (!c.valid) throw RejectedChoice("PlaneSession: cell lies outside the design space");
  choices_.push_back(GridChoice{level_, i, j});
  grid_center_ = c.coord;
  ++level_;
  if (completed()) chosen_point_ = std::move(c.point);
}

PlaneSession PlaneSession::replay(Plane plane, GridSpec spec, const std::vector<GridChoice>& choices) {
  PlaneSession session(std::move(plane), spec);
  for (const GridChoice& c : choices) {
    if (c.level != session.level()) throw std::invalid_argument("PlaneSession::replay: choice levels out of order");
    session.choose(c.i, c.j);
  }
  return session;
}

std::vector<Cell> grid_cells(const PlaneSession& session) { return session.cells(); }

PlaneSession choose(PlaneSession session, int i, int j) {
  session.choose(i, j);
  return session;
}

long long reachable_set_size(const GridSpec& spec) {
  spec.validate();
  const int r = spec.radius();
  // Centers reachable after each level, kept distinct; every click sequence
  // passes through one of them, so this enumerates all sequences.
  auto key = [](double v) { return std::llround(v * 1e12); };
  std::set<std::pair<long long, long long>> seen;
  std::vector<PlaneLocalCoord> frontier{PlaneLocalCoord{0.0, 0.0}};
  std::set<std::pair<long long, long long>> reachable;
  for (int level = 0; level < spec.levels; ++level) {
    const double h = spec.spacing(level);
    std::vector<PlaneLocalCoord> next;
    seen.clear();
    for (const PlaneLocalCoord& c : frontier)
      for (int i = -r; i <= r; ++i)
        for (int j = -r; j <= r; ++j) {
          const PlaneLocalCoord p{c.s + i * h, c.t + j * h};
          if (seen.insert({key(p.s), key(p.t)}).second) next.push_back(p);
        }
    frontier = std::move(next);
  }
  for (const PlaneLocalCoord& c : frontier) reachable.insert({key(c.s), key(c.t)});
  return static_cast<long long>(reachable.size());
}

PreferenceIntent plane_preference(const Plane& plane, const Vector& chosen, double dedup_tolerance) {
  const SearchSpace space(plane.dim());
  PreferenceIntent intent{chosen, {}};
  for (Vector& rep : plane.representatives()) {
    if (!space.contains(rep)) continue;
    if (max_norm_distance(rep, chosen) <= dedup_tolerance) continue;
    intent.losers.push_back(std::move(rep));
  }
  return intent;
}

PreferenceIntent finalize_preference(const PlaneSession& session, double dedup_tolerance) {
  if (!session.completed() || !session.chosen_point())
    throw InvalidState("finalize_preference: session not completed");
  return plane_preference(session.plane(), *session.chosen_point(), dedup_tolerance);
}

SimulationResult simulate_plane_session(const Plane& plane, const GridSpec& spec, const GoodnessOracle& oracle,
                                        SimulationMode mode) {
  if (mode == SimulationMode::continuous) {
    constexpr int side = 129;
    const SearchSpace space(plane.dim());
    std::optional<Vector> best;
    double best_value = 0.0;
    for (int a = 0; a < side; ++a)
      for (int b = 0; b < side; ++b) {
        const double s = -1.0 + 2.0 * a / (side - 1);
        const double t = -1.0 + 2.0 * b / (side - 1);
        Vector x = plane.point(s, t);
        if (!space.contains(x)) continue;
        const double value = oracle(x);
        if (!best || value > best_value) {
          best_value = value;
          best = std::move(x);
        }
      }
    if (!best) throw std::runtime_error("simulate_plane_session: no valid point on the plane");
    return SimulationResult{*best, plane_preference(plane, *best)};
  }

  PlaneSession session(plane, spec);
  while (!session.completed()) {
    const Cell* pick = nullptr;
    double best_value = 0.0;
    const auto cells = session.cells();
    for (const Cell& c : cells) {
      if (!c.valid) continue;
      const double value = oracle(c.point);
      if (!pick || value > best_value) {
        best_value = value;
        pick = &c;
      }
    }
    if (!pick) throw std::runtime_error("simulate_plane_session: every cell is outside the design space");
    session.choose(pick->i, pick->j);
  }
  return SimulationResult{*session.chosen_point(), finalize_preference(session)};
}

SimulationResult simulate_line_session(const Line& line, int samples, const GoodnessOracle& oracle,
                                       double dedup_tolerance) {
  if (samples < 2) throw std::invalid_argument("simulate_line_session: samples must be >= 2");
  Vector best = line.start;
  double best_value = oracle(best);
  for (int k = 1; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    Vector x = k == samples - 1 ? line.end : line.point(t);
    const double value = oracle(x);
    if (value > best_value) {
      best_value = value;
      best = std::move(x);
    }
  }
  PreferenceIntent intent{best, {}};
  for (const Vector& end : {line.start, line.end})
    if (max_norm_distance(end, best) > dedup_tolerance) intent.losers.push_back(end);
  return SimulationResult{best, std::move(intent)};
}

}  // namespace planesearch

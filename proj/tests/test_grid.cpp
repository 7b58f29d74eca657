#include "planesearch/grid.hpp"
#include "planesearch/random.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace planesearch;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index k = 0;
  for (double x : values) v(k++) = x;
  return v;
}

Plane small_plane() { return Plane{Vector::Constant(3, 0.5), vec({0.2, 0.0, 0.05}), vec({0.0, 0.2, -0.05})}; }

}  // namespace

TEST_CASE("level-0 grid layout") {
  const PlaneSession session(small_plane(), GridSpec{});
  const auto cells = session.cells();
  REQUIRE(cells.size() == 25);
  std::set<double> s_values;
  for (const Cell& c : cells) s_values.insert(c.coord.s);
  CHECK(s_values == std::set<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  // i outer, j inner.
  CHECK(cells[0].i == -2);
  CHECK(cells[0].j == -2);
  CHECK(cells[1].i == -2);
  CHECK(cells[1].j == -1);
  CHECK(cells[12].i == 0);
  CHECK(cells[12].j == 0);
  CHECK(cells[12].point == small_plane().center);
  for (const Cell& c : cells) {
    CHECK(c.point == small_plane().point(c.coord));
    CHECK(c.valid == SearchSpace(3).contains(c.point));
  }
}

TEST_CASE("zooming halves the spacing and recenters on the clicked cell") {
  PlaneSession session(small_plane(), GridSpec{});
  session.choose(0, 0);
  CHECK(session.spacing() == 0.25);
  const auto cells = session.cells();
  CHECK(cells.front().coord == PlaneLocalCoord{-0.5, -0.5});
  CHECK(cells.back().coord == PlaneLocalCoord{0.5, 0.5});

  // Child center equals the clicked cell bit-exactly, at every level.
  RandomSource rng(3);
  PlaneSession s(small_plane(), GridSpec{});
  while (!s.completed()) {
    const int i = static_cast<int>(rng.next_u64() % 5) - 2, j = static_cast<int>(rng.next_u64() % 5) - 2;
    const Cell clicked = s.cell(i, j);
    if (!clicked.valid) continue;
    s.choose(i, j);
    if (s.completed()) {
      CHECK(*s.chosen_point() == clicked.point);
    } else {
      CHECK(s.cell(0, 0).point == clicked.point);
      CHECK(s.cell(0, 0).coord == clicked.coord);
    }
  }
}

TEST_CASE("extrapolating clicks reach beyond the level-0 square") {
  // c +- 1.5 u must stay inside X for the level-1 edge to be valid.
  const Plane p{Vector::Constant(2, 0.5), vec({0.2, 0.0}), vec({0.0, 0.2})};
  PlaneSession session(p, GridSpec{});
  session.choose(2, 0);
  CHECK(session.grid_center().s == 1.0);
  // Hand accumulation: s0 = 0 + 2 * 0.5 = 1; level-1 edge = 1 + 2 * 0.25 = 1.5.
  CHECK(session.cell(2, 0).coord.s == 1.5);
  CHECK(session.cell(2, 0).valid);
}

TEST_CASE("all-center clicks return the plane center") {
  PlaneSession session(small_plane(), GridSpec{});
  for (int k = 0; k < 4; ++k) {
    CHECK_FALSE(session.completed());
    session.choose(0, 0);
  }
  CHECK(session.completed());
  CHECK(*session.chosen_point() == small_plane().center);
  CHECK_THROWS_AS(session.cells(), InvalidState);
  CHECK_THROWS_AS(session.choose(0, 0), InvalidState);

  const PreferenceIntent intent = finalize_preference(session);
  CHECK(intent.winner == small_plane().center);
  CHECK(intent.losers.size() == 4);
}

TEST_CASE("choice errors") {
  const Plane p{vec({0.9, 0.5}), vec({0.4, 0.0}), vec({0.0, 0.2}), 1.0, 1.0, BoundaryMode::mask_outside};
  PlaneSession session(p, GridSpec{});
  CHECK_THROWS_AS(session.choose(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(session.cell(0, -3), std::invalid_argument);
  CHECK_FALSE(session.cell(2, 0).valid);  // 0.9 + 0.4 > 1
  CHECK_THROWS_AS(session.choose(2, 0), RejectedChoice);
  CHECK(session.level() == 0);
  CHECK(session.choices().empty());
}

TEST_CASE("replay reproduces a session") {
  PlaneSession s(small_plane(), GridSpec{});
  s.choose(1, -1);
  s.choose(0, 2);
  const PlaneSession r = PlaneSession::replay(small_plane(), GridSpec{}, s.choices());
  CHECK(r == s);
  CHECK(choose(s, 0, 0).level() == 3);
  CHECK(s.level() == 2);
  CHECK(grid_cells(s).size() == 25);
}

TEST_CASE("reachable set size") {
  CHECK(reachable_set_size(GridSpec{3, 1}) == 9);
  CHECK(reachable_set_size(GridSpec{5, 1}) == 25);

  // Oracle: enumerate first click x second cell in units of the level-1 spacing.
  std::set<std::pair<int, int>> reached;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) reached.insert({2 * i + k, 2 * j + l});
  CHECK(reachable_set_size(GridSpec{5, 2}) == static_cast<long long>(reached.size()));
  CHECK(reached.size() == 169);
  CHECK(reachable_set_size(GridSpec{5, 3}) > 25);
  CHECK(reachable_set_size(GridSpec{3, 2}) > 9);
}

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(GridSpec({4, 4}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({1, 4}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({5, 0}).validate(), std::invalid_argument);
  CHECK_NOTHROW(GridSpec({3, 1}).validate());
  CHECK(GridSpec{}.spacing(0) == 0.5);
  CHECK(GridSpec{}.spacing(3) == 0.0625);
}

TEST_CASE("plane preference") {
  const Plane p = small_plane();
  SUBCASE("winner distinct from all representatives") {
    const Vector chosen = p.point(0.25, 0.75);
    const PreferenceIntent intent = plane_preference(p, chosen);
    CHECK(intent.losers.size() == 5);
  }
  SUBCASE("clipped vertex is the actual loser") {
    const Plane q = clip_negative_vertices(Plane{vec({0.1, 0.5}), vec({0.5, 0.0}), vec({0.0, 0.2})}, SearchSpace(2));
    CHECK(q.neg_u_scale == doctest::Approx(0.2).epsilon(1e-15));
    const PreferenceIntent intent = plane_preference(q, q.point(0.5, 0.5));
    bool found = false;
    for (const Vector& l : intent.losers) found = found || l == q.center - q.neg_u_scale * q.u;
    CHECK(found);
  }
}

TEST_CASE("simulated plane session") {
  const Plane p = small_plane();
  SUBCASE("oracle peaked at the center") {
    const auto r = simulate_plane_session(p, GridSpec{}, [&](const Vector& x) { return -(x - p.center).squaredNorm(); });
    CHECK(r.chosen == p.center);
    CHECK(r.intent.losers.size() == 4);
  }
  SUBCASE("linear oracle walks to the reachable edge") {
    // Resolution 3, levels 2: s = 1 at level 0, then 1 + 0.5 at level 1.
    const Plane q{Vector::Constant(2, 0.5), vec({0.2, 0.0}), vec({0.0, 0.2})};
    // The second term breaks ties along v in favour of the centre row.
    const auto r = simulate_plane_session(q, GridSpec{3, 2}, [](const Vector& x) { return x(0) - std::pow(x(1) - 0.5, 2); });
    CHECK(r.chosen.isApprox(q.point(1.5, 0.0)));
  }
  SUBCASE("greedy choice dominates the five representatives") {
    RandomSource rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const Vector target = rng.uniform_point(3);
      const GoodnessOracle oracle = [&](const Vector& x) { return -(x - target).squaredNorm(); };
      const auto r = simulate_plane_session(p, GridSpec{}, oracle);
      for (const Vector& rep : p.representatives()) CHECK(oracle(r.chosen) >= oracle(rep));
      const auto rc = simulate_plane_session(p, GridSpec{}, oracle, SimulationMode::continuous);
      for (const Vector& rep : p.representatives()) CHECK(oracle(rc.chosen) >= oracle(rep));
    }
  }
}

TEST_CASE("simulated line session") {
  const Line line{vec({0.2, 0.2}), vec({0.8, 0.6})};
  SUBCASE("peak at the start") {
    const auto r = simulate_line_session(line, 1000, [&](const Vector& x) { return -(x - line.start).norm(); });
    CHECK(r.chosen == line.start);
    REQUIRE(r.intent.losers.size() == 1);
    CHECK(r.intent.losers[0] == line.end);
  }
  SUBCASE("constant oracle keeps the start") {
    const auto r = simulate_line_session(line, 1000, [](const Vector&) { return 1.0; });
    CHECK(r.chosen == line.start);
  }
  SUBCASE("quadratic peak") {
    // Closed-form vertex at t = 0.3.
    const auto r = simulate_line_session(line, 1000, [&](const Vector& x) {
      const double t = (x(0) - 0.2) / 0.6;
      return -(t - 0.3) * (t - 0.3);
    });
    const double t = (r.chosen(0) - 0.2) / 0.6;
    CHECK(std::fabs(t - 0.3) <= 1.0 / 999.0);
    CHECK(r.intent.losers.size() == 2);
  }
}

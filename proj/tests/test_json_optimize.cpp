#include "planesearch/json_io.hpp"
#include "planesearch/optimize.hpp"
#include "planesearch/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace planesearch;

TEST_CASE("bounded minimization of a quadratic with active bounds") {
  // min (x0 - 2)^2 + (x1 + 1)^2 + x0 x1 / 2 over [0, 1]^2: x1 sits at 0, x0 at 1.
  const optim::Objective f = [](const Vector& x, Vector& g) {
    g.resize(2);
    g(0) = 2 * (x(0) - 2) + 0.5 * x(1);
    g(1) = 2 * (x(1) + 1) + 0.5 * x(0);
    return (x(0) - 2) * (x(0) - 2) + (x(1) + 1) * (x(1) + 1) + 0.5 * x(0) * x(1);
  };
  const auto r = optim::minimize_bounded(f, Vector::Constant(2, 0.5), Vector::Zero(2), Vector::Ones(2));
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(0.0));
  CHECK(r.projected_gradient_norm <= 1e-8);
}

TEST_CASE("bounded minimization of the Rosenbrock valley") {
  const optim::Objective f = [](const Vector& x, Vector& g) {
    g.resize(2);
    g(0) = -400 * x(0) * (x(1) - x(0) * x(0)) - 2 * (1 - x(0));
    g(1) = 200 * (x(1) - x(0) * x(0));
    return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
  };
  optim::BoundedOptions opts;
  opts.max_iterations = 500;
  const auto r = optim::minimize_bounded(f, Vector::Constant(2, -1.0), Vector::Constant(2, -2.0),
                                         Vector::Constant(2, 2.0), opts);
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.value <= 1e-10);
}

TEST_CASE("projected gradient zeroes components pushing out of the box") {
  Vector x(3), g(3);
  x << 0.0, 0.5, 1.0;
  g << 1.0, 2.0, -3.0;
  const Vector p = optim::projected_gradient(x, g, Vector::Zero(3), Vector::Ones(3));
  CHECK(p(0) == 0.0);
  CHECK(p(1) == 2.0);
  CHECK(p(2) == 0.0);
}

TEST_CASE("dataset JSON round-trips bit-exactly") {
  RandomSource rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 6);
    Dataset d{SearchSpace(n)};
    for (int r = 0; r < 4; ++r) {
      PreferenceIntent intent{rng.uniform_point(n), {rng.uniform_point(n)}};
      if (rng.uniform() < 0.5) intent.losers.push_back(rng.uniform_point(n));
      d.add(intent);
    }
    const Json doc = dataset_to_json(d);
    CHECK(dataset_from_json(parse_json(doc.dump())) == d);
  }
}

TEST_CASE("plane and session JSON round-trip") {
  RandomSource rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    Plane p{rng.uniform_point(4), 0.1 * rng.normal_vector(4), 0.1 * rng.normal_vector(4), rng.uniform(), rng.uniform(),
            trial % 2 ? BoundaryMode::mask_outside : BoundaryMode::scale_half_diagonal};
    CHECK(plane_from_json(parse_json(plane_to_json(p).dump())) == p);

    const Plane q{Vector::Constant(4, 0.5), 0.05 * rng.normal_vector(4), 0.05 * rng.normal_vector(4)};
    PlaneSession s(q, GridSpec{});
    const int clicks = static_cast<int>(rng.next_u64() % 4);
    for (int k = 0; k < clicks; ++k) s.choose(static_cast<int>(rng.next_u64() % 5) - 2, static_cast<int>(rng.next_u64() % 5) - 2);
    const Json doc = session_to_json(s);
    const PlaneSession back = session_from_json(parse_json(doc.dump()));
    CHECK(back == s);
    CHECK(session_to_json(back) == doc);
  }
}

TEST_CASE("JSON errors name their location") {
  try {
    parse_json("{\"n\": 2, \"points\": [}");
    FAIL("expected a parse error");
  } catch (const JsonFormatError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  try {
    dataset_from_json(parse_json(R"({"n": 2, "points": [[0.1, 0.2], [0.3]], "records": []})"));
    FAIL("expected a format error");
  } catch (const JsonFormatError& e) {
    CHECK(std::string(e.what()).find("points[1]") != std::string::npos);
  }
  CHECK_THROWS_AS(dataset_from_json(parse_json(R"({"n": 2, "points": [[0.1, 0.2]], "records": [{"winner": 0, "losers": [3]}]})")),
                  JsonFormatError);
  CHECK_THROWS_AS(plane_from_json(parse_json(R"({"c": [0.5], "u": [0.1]})")), JsonFormatError);
  Json bad = session_to_json(PlaneSession(Plane{Vector::Constant(2, 0.5), Vector::Zero(2), Vector::Zero(2)}, GridSpec{}));
  bad["level"] = 2;
  CHECK_THROWS_AS(session_from_json(bad), JsonFormatError);
}

TEST_CASE("random source streams and state") {
  RandomSource a(1, Stream::plane), b(1, Stream::acquisition), c(1, Stream::plane);
  CHECK(a.uniform() != b.uniform());
  RandomSource d(1, Stream::plane);
  d.uniform();
  CHECK(c.next_u64() != d.next_u64());
  RandomSource e(9);
  for (int k = 0; k < 10; ++k) e.normal();
  RandomSource f(0);
  f.set_state(e.state());
  for (int k = 0; k < 10; ++k) CHECK(e.uniform() == f.uniform());
  CHECK_THROWS_AS(f.set_state("garbage"), std::invalid_argument);
  for (int k = 0; k < 1000; ++k) {
    const double u = e.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

#include "planesearch/acquisition.hpp"

#include <doctest.h>

#include <cmath>

using namespace planesearch;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index k = 0;
  for (double x : values) v(k++) = x;
  return v;
}

FittedModel fitted(int dim, int records, std::uint64_t seed) {
  RandomSource rng(seed);
  Dataset d{SearchSpace(dim)};
  for (int r = 0; r < records; ++r) d.add(PreferenceIntent{rng.uniform_point(dim), {rng.uniform_point(dim)}});
  return map_fit(d);
}

FittedModel single_point(int dim, double amplitude) {
  Dataset d{SearchSpace(dim)};
  d.add_point(Vector::Constant(dim, 0.5));
  return FittedModel(d, KernelHyperparams{amplitude, Vector::Constant(dim, 0.5)}, vec({0.0}), 0.01,
                     1e-8 * amplitude);
}

}  // namespace

TEST_CASE("EI closed form") {
  // Oracles: long double instantiation and table values.
  CHECK(expected_improvement(0.0, 1.0, 0.0) ==
        doctest::Approx(static_cast<double>(expected_improvement(0.0L, 1.0L, 0.0L))).epsilon(1e-15));
  CHECK(expected_improvement(0.0, 1.0, 0.0) == doctest::Approx(0.39894).epsilon(1e-5));
  const long double phi2 = std::exp(-2.0L) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
  const long double cdf2 = std::erfc(-2.0L / std::sqrt(2.0L)) / 2.0L;
  CHECK(expected_improvement(2.0, 1.0, 0.0) == doctest::Approx(static_cast<double>(2.0L * cdf2 + phi2)).epsilon(1e-14));
  CHECK(expected_improvement(2.0, 1.0, 0.0) == doctest::Approx(2.00849).epsilon(1e-5));
  CHECK(expected_improvement(0.7, 0.0, 0.2) == 0.0);
  CHECK(expected_improvement(-50.0, 1.0, 0.0) >= 0.0);
}

TEST_CASE("EI is nonnegative and vanishes at observed points") {
  RandomSource rng(8);
  Dataset d{SearchSpace(3)};
  for (int r = 0; r < 5; ++r) d.add(PreferenceIntent{rng.uniform_point(3), {rng.uniform_point(3)}});
  const FittedModel fit = map_fit(d);
  // Same latent values and hyperparameters, absolute jitter 1e-10.
  const FittedModel m(d, fit.hyperparams(), fit.latent_goodness(), fit.btl_scale(), 1e-10);
  const Vector x_plus = d.point(current_best(m));
  for (Index i = 0; i < d.size(); ++i) CHECK(expected_improvement(m, d.point(i), x_plus) <= 1e-8);
  for (int k = 0; k < 1000; ++k) CHECK(expected_improvement(m, rng.uniform_point(3), x_plus) >= 0.0);
}

TEST_CASE("analytic EI gradient matches fourth-order finite differences") {
  const FittedModel m = fitted(3, 5, 17);
  const Vector x_plus = m.dataset().point(current_best(m));
  const double best = posterior(m, x_plus).mean;
  AcquisitionConfig cfg;
  RandomSource rng(1);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Vector x = rng.uniform_point(3);
    Vector g;
    const double ei = expected_improvement_gradient(m, x, best, cfg, g);
    CHECK(ei == doctest::Approx(expected_improvement_at(m, x, best)).epsilon(1e-12));
    if (ei < 1e-10) continue;
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-4;
      auto at = [&](double delta) {
        Vector y = x;
        y(k) += delta;
        return expected_improvement_at(m, y, best);
      };
      const double fd = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
      CHECK(g(k) == doctest::Approx(fd).epsilon(1e-4).scale(1e-10));
      ++checked;
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("central-difference gradient mode agrees with the analytic mode") {
  const FittedModel m = fitted(2, 4, 3);
  const double best = posterior(m, m.dataset().point(current_best(m))).mean;
  AcquisitionConfig analytic, numeric;
  numeric.gradient = GradientMode::central_difference;
  RandomSource rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = rng.uniform_point(2);
    Vector ga, gn;
    expected_improvement_gradient(m, x, best, analytic, ga);
    expected_improvement_gradient(m, x, best, numeric, gn);
    for (int k = 0; k < 2; ++k) CHECK(gn(k) == doctest::Approx(ga(k)).epsilon(1e-4).scale(1e-8));
  }
}

TEST_CASE("maximize_ei beats random probes") {
  const FittedModel m = single_point(3, 1.0);
  const Vector x_plus = m.dataset().point(0);
  RandomSource rng(12);
  const Vector x = maximize_ei(m, x_plus, AcquisitionConfig{}, rng);
  CHECK(m.space().contains(x));
  const double found = expected_improvement(m, x, x_plus);
  RandomSource probes(13);
  for (int k = 0; k < 1000; ++k) CHECK(found >= expected_improvement(m, probes.uniform_point(3), x_plus));
}

TEST_CASE("maximize_ei is deterministic under a seed") {
  const FittedModel m = fitted(4, 6, 5);
  const Vector x_plus = m.dataset().point(current_best(m));
  RandomSource a(99), b(99);
  CHECK(maximize_ei(m, x_plus, AcquisitionConfig{}, a) == maximize_ei(m, x_plus, AcquisitionConfig{}, b));
}

TEST_CASE("plane_acquisition is the mean of the lattice EI values") {
  const FittedModel m = fitted(3, 5, 23);
  const Vector x_plus = m.dataset().point(current_best(m));
  Plane plane{Vector::Constant(3, 0.5), vec({0.2, 0.1, 0.0}), vec({-0.05, 0.1, 0.3}), 1.0, 1.0,
              BoundaryMode::scale_half_diagonal};
  const AcquisitionConfig cfg;
  double sum = 0.0;
  int count = 0;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      sum += expected_improvement(m, plane.point(0.5 * i, 0.5 * j), x_plus);
      ++count;
    }
  CHECK(count == 25);
  CHECK(plane_acquisition(m, plane, x_plus, cfg) == doctest::Approx(sum / 25).epsilon(1e-12));

  const Plane degenerate{Vector::Constant(3, 0.4), Vector::Zero(3), Vector::Zero(3)};
  CHECK(plane_acquisition(m, degenerate, x_plus, cfg) ==
        doctest::Approx(expected_improvement(m, degenerate.center, x_plus)).epsilon(1e-12));
}

TEST_CASE("plane_acquisition prefers planes away from the data") {
  Dataset d{SearchSpace(2)};
  d.add(PreferenceIntent{vec({0.2, 0.2}), {vec({0.25, 0.2})}});
  const FittedModel m(d, KernelHyperparams{0.2, Vector::Constant(2, 0.1)}, vec({0.0, 0.0}), 0.01, 2e-9);
  const Vector x_plus = d.point(0);
  const Plane through{vec({0.2, 0.2}), vec({0.05, 0.0}), vec({0.0, 0.05})};
  const Plane away{vec({0.75, 0.75}), vec({0.05, 0.0}), vec({0.0, 0.05})};
  const AcquisitionConfig cfg;
  CHECK(plane_acquisition(m, away, x_plus, cfg) > plane_acquisition(m, through, x_plus, cfg));
}

TEST_CASE("acquisition lattice") {
  const auto lattice = acquisition_lattice(5);
  REQUIRE(lattice.size() == 25);
  CHECK(lattice.front() == PlaneLocalCoord{-1.0, -1.0});
  CHECK(lattice[12] == PlaneLocalCoord{0.0, 0.0});
  CHECK(lattice.back() == PlaneLocalCoord{1.0, 1.0});
  CHECK_THROWS_AS(acquisition_lattice(4), std::invalid_argument);
}

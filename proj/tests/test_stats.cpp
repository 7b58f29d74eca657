#include "planesearch/random.hpp"
#include "planesearch/stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace planesearch;

namespace {

// Oracle: enumerate every split of the pooled sample into groups of the
// original sizes and count statistics at least as extreme as the observed
// one, measured as |U - n_a n_b / 2|.
double enumerated_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), na = a.size();
  auto u_of = [&](const std::vector<bool>& in_a) {
    double u = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (in_a[i])
        for (std::size_t j = 0; j < n; ++j)
          if (!in_a[j]) u += pooled[i] > pooled[j] ? 1.0 : pooled[i] == pooled[j] ? 0.5 : 0.0;
    return u;
  };
  std::vector<bool> observed(n, false);
  std::fill(observed.begin(), observed.begin() + static_cast<long>(na), true);
  const double centre = 0.5 * static_cast<double>(na * b.size());
  const double obs = std::fabs(u_of(observed) - centre);

  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(na), true);
  std::sort(mask.begin(), mask.end());
  long total = 0, extreme = 0;
  do {
    ++total;
    if (std::fabs(u_of(mask) - centre) >= obs - 1e-9) ++extreme;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("Mann-Whitney: known cases") {
  const std::vector<double> a{1, 2}, b{3, 4};
  const auto r = stats::mann_whitney_u(a, b);
  CHECK(r.u_a == 0.0);
  CHECK(r.u_b == 4.0);
  CHECK(r.exact);
  CHECK(r.p_two_sided == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(enumerated_p(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const std::vector<double> same{2, 2, 2}, other{2, 2};
  CHECK(stats::mann_whitney_u(same, other).effect_size == 0.5);

  std::vector<double> hi, lo;
  for (int k = 0; k < 20; ++k) {
    hi.push_back(10 + k);
    lo.push_back(k * 0.1);
  }
  const auto sep = stats::mann_whitney_u(hi, lo);
  CHECK(sep.u_a == 400.0);
  CHECK(sep.effect_size == 1.0);
  CHECK_FALSE(sep.exact);
  CHECK(sep.p_two_sided < 1e-6);
}

TEST_CASE("Mann-Whitney: U_a + U_b = n_a n_b") {
  RandomSource rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int na = 1 + static_cast<int>(rng.next_u64() % 30), nb = 1 + static_cast<int>(rng.next_u64() % 30);
    std::vector<double> a, b;
    // Coarse values force ties.
    for (int k = 0; k < na; ++k) a.push_back(std::floor(rng.uniform() * 6));
    for (int k = 0; k < nb; ++k) b.push_back(std::floor(rng.uniform() * 6));
    const auto r = stats::mann_whitney_u(a, b);
    CHECK(r.u_a + r.u_b == static_cast<double>(na * nb));
    CHECK(r.p_two_sided >= 0.0);
    CHECK(r.p_two_sided <= 1.0);
    CHECK(r.effect_size == doctest::Approx(r.u_a / (na * nb)));
  }
}

TEST_CASE("Mann-Whitney: agreement with exhaustive enumeration on small samples") {
  RandomSource rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int na = 1 + static_cast<int>(rng.next_u64() % 7), nb = 1 + static_cast<int>(rng.next_u64() % 7);
    std::vector<double> a, b;
    const bool ties = trial % 2 == 0;
    for (int k = 0; k < na; ++k) a.push_back(ties ? std::floor(rng.uniform() * 4) : rng.uniform());
    for (int k = 0; k < nb; ++k) b.push_back(ties ? std::floor(rng.uniform() * 4) + 0.5 * (trial % 4 == 0) : rng.uniform());
    const auto r = stats::mann_whitney_u(a, b);
    CHECK(std::fabs(r.p_two_sided - enumerated_p(a, b)) <= 0.05);
  }
}

TEST_CASE("Mann-Whitney: normal approximation with ties") {
  // Hand calculation: a = {1,2,2,3}, b = {2,3,4,5,6}; midranks 1, 3, 3, 5.5 | 3, 5.5, 7, 8, 9.
  const std::vector<double> a{1, 2, 2, 3}, b{2, 3, 4, 5, 6};
  const auto r = stats::mann_whitney_u(a, b, 0);
  CHECK(r.u_a == 2.5);
  const double mu = 10.0, n = 9.0;
  const double tie = (27.0 - 3.0) + (8.0 - 2.0);
  const double sigma = std::sqrt(4.0 * 5.0 / 12.0 * ((n + 1) - tie / (n * (n - 1))));
  const double z = (std::fabs(2.5 - mu) - 0.5) / sigma;
  CHECK(r.p_two_sided == doctest::Approx(std::erfc(z / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(stats::mann_whitney_normal_p(a, b) == doctest::Approx(r.p_two_sided).epsilon(1e-12));
}

TEST_CASE("Mann-Whitney rejects empty samples") {
  const std::vector<double> a{1.0}, empty;
  CHECK_THROWS_AS(stats::mann_whitney_u(a, empty), std::invalid_argument);
}

TEST_CASE("Bonferroni") {
  CHECK(stats::bonferroni_alpha(0.05, 3) == doctest::Approx(0.0166666666666667).epsilon(1e-14));
  CHECK(stats::bonferroni_alpha(0.05, 1) == 0.05);
  CHECK(stats::bonferroni_alpha(0.01, 4) == 0.0025);
  CHECK_THROWS_AS(stats::bonferroni_alpha(0.05, 0), std::invalid_argument);
  CHECK_THROWS_AS(stats::bonferroni_alpha(1.5, 2), std::invalid_argument);
}

TEST_CASE("midranks, mean, median") {
  const std::vector<double> x{3, 1, 3, 2};
  CHECK(stats::midranks(x) == std::vector<double>{3.5, 1, 3.5, 2});
  CHECK(stats::mean(x) == 2.25);
  CHECK(stats::median(x) == 2.5);
  const std::vector<double> odd{5, 1, 3};
  CHECK(stats::median(odd) == 3);
}

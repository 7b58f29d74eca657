#include "planesearch/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace planesearch::stats {

std::vector<double> midranks(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

struct RankSums {
  std::vector<double> ranks;  // pooled, a first
  double rank_sum_a = 0.0;
  double u_a = 0.0;
};

RankSums rank_sums(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: both samples must be nonempty");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double x : pooled)
    if (std::isnan(x)) throw std::invalid_argument("mann_whitney_u: NaN in sample");
  RankSums out;
  out.ranks = midranks(pooled);
  for (std::size_t i = 0; i < a.size(); ++i) out.rank_sum_a += out.ranks[i];
  const double na = static_cast<double>(a.size());
  out.u_a = out.rank_sum_a - na * (na + 1.0) / 2.0;
  return out;
}

double normal_p(const RankSums& rs, std::size_t n_a, std::size_t n_b) {
  const double na = static_cast<double>(n_a);
  const double nb = static_cast<double>(n_b);
  const double n = na + nb;
  std::vector<double> sorted = rs.ranks;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0)) return 1.0;
  const double deviation = std::max(0.0, std::abs(rs.u_a - na * nb / 2.0) - 0.5);
  const double z = deviation / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

// Exact permutation distribution of the (doubled, hence integral) rank sum of
// a random n_a-subset of the pooled midranks, by dynamic programming.
double exact_p(const RankSums& rs, std::size_t n_a) {
  std::vector<long> doubled;
  for (double r : rs.ranks) doubled.push_back(std::lround(2.0 * r));
  const long total = std::accumulate(doubled.begin(), doubled.end(), 0L);
  // ways[k][s]: subsets of size k with doubled sum s
  std::vector<std::vector<double>> ways(n_a + 1, std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  ways[0][0] = 1.0;
  for (long r : doubled)
    for (std::size_t k = n_a; k-- > 0;)
      for (long s = total - r; s >= 0; --s)
        if (ways[k][static_cast<std::size_t>(s)] != 0.0)
          ways[k + 1][static_cast<std::size_t>(s + r)] += ways[k][static_cast<std::size_t>(s)];

  // Two-sided: subsets whose rank sum lies at least as far from its mean as the
  // observed one. With ties the null distribution is not symmetric, so this is
  // not the same as doubling the smaller tail.
  const long n = static_cast<long>(doubled.size());
  const long centre = static_cast<long>(n_a) * (n + 1);  // mean of the doubled sum
  const long observed = std::lround(2.0 * rs.rank_sum_a);
  const long obs_dev = std::labs(observed - centre);
  double extreme = 0.0, all = 0.0;
  for (long s = 0; s <= total; ++s) {
    const double w = ways[n_a][static_cast<std::size_t>(s)];
    all += w;
    if (std::labs(s - centre) >= obs_dev) extreme += w;
  }
  return std::min(1.0, extreme / all);
}

}  // namespace

double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b) {
  return normal_p(rank_sums(a, b), a.size(), b.size());
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b, int exact_limit) {
  const RankSums rs = rank_sums(a, b);
  const double nn = static_cast<double>(a.size()) * static_cast<double>(b.size());
  MannWhitneyResult out;
  out.u_a = rs.u_a;
  out.u_b = nn - rs.u_a;
  out.effect_size = rs.u_a / nn;
  const auto limit = static_cast<std::size_t>(std::max(exact_limit, 0));
  out.exact = a.size() < limit && b.size() < limit;
  out.p_two_sided = out.exact ? exact_p(rs, a.size()) : normal_p(rs, a.size(), b.size());
  return out;
}

double bonferroni_alpha(double alpha, int comparisons) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("bonferroni_alpha: alpha must be in (0, 1)");
  if (comparisons < 1) throw std::invalid_argument("bonferroni_alpha: comparisons must be >= 1");
  return alpha / comparisons;
}

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean: empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double median(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("median: empty sample");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace planesearch::stats

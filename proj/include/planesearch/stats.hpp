#pragma once

#include <span>
#include <vector>

namespace planesearch::stats {

struct MannWhitneyResult {
  double u_a = 0.0;  // pairs with a > b, ties counting one half
  double u_b = 0.0;
  double p_two_sided = 1.0;
  double effect_size = 0.5;  // common-language effect size u_a / (n_a n_b)
  bool exact = false;        // p from the exact permutation distribution
};

/// Two-sided Mann-Whitney U test with midranks for ties. Small samples
/// (both sizes below `exact_limit`) use the exact permutation distribution of
/// the rank sum; larger ones the normal approximation with tie-corrected
/// variance and continuity correction.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b, int exact_limit = 8);

/// Normal-approximation p value only, regardless of sample size.
double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b);

double bonferroni_alpha(double alpha, int comparisons);

double mean(std::span<const double> x);
double median(std::span<const double> x);

/// Midranks (1-based) of the pooled sample.
std::vector<double> midranks(std::span<const double> pooled);

}  // namespace planesearch::stats

#pragma once

#include "planesearch/stats.hpp"
#include "planesearch/synthetic.hpp"

#include <string>
#include <vector>

namespace planesearch {

struct MethodSummary {
  std::string method;
  int trials = 0;
  double mean_gap = 0.0;
  double median_gap = 0.0;
};

struct PairComparison {
  std::string first;
  std::string second;
  /// u_a counts trials pairs where `first` has the larger gap, so
  /// effect_size is the probability that `second` beats `first`.
  stats::MannWhitneyResult test;
  double alpha = 0.0;  // Bonferroni-adjusted
  bool significant = false;
};

struct Comparison {
  std::string function;
  int dim = 0;
  int iteration = 0;
  std::vector<MethodSummary> methods;
  std::vector<PairComparison> pairs;
};

/// Optimality gaps of `method` at `iteration`, ordered by trial.
std::vector<double> gaps_at(const std::vector<CsvRow>& rows, const std::string& method, const std::string& function,
                            int dim, int iteration);

/// Per (function, dim) group: summaries and all pairwise Mann-Whitney tests at
/// one iteration, with alpha divided by the number of pairs.
std::vector<Comparison> compare_at_iteration(const std::vector<CsvRow>& rows, int iteration, double alpha = 0.05);

}  // namespace planesearch

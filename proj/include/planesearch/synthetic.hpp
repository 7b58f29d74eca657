#pragma once

#include "planesearch/search.hpp"

#include <cmath>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace planesearch {

/// exp(-|x* - x|^2) with x* = (0.3, ..., 0.3).
template <typename Derived>
typename Derived::Scalar isotropic_gaussian(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  using std::exp;
  const Scalar sq = (x.array() - Scalar(3) / Scalar(10)).square().sum();
  return exp(-sq);
}

/// Negated Rosenbrock function rescaled so that its maximizer is (0.25, ..., 0.25):
/// -sum_i [100 (4 x_{i+1} - 16 x_i^2)^2 + (1 - 4 x_i)^2].
template <typename Derived>
typename Derived::Scalar neg_scaled_rosenbrock(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() < 2) throw std::invalid_argument("neg_scaled_rosenbrock: dimension must be >= 2");
  Scalar total(0);
  for (Index i = 0; i + 1 < x.size(); ++i) {
    const Scalar a = Scalar(4) * x(i + 1) - Scalar(16) * x(i) * x(i);
    const Scalar b = Scalar(1) - Scalar(4) * x(i);
    total += Scalar(100) * a * a + b * b;
  }
  return -total;
}

enum class FunctionKind { isotropic_gaussian, neg_scaled_rosenbrock };

std::string to_string(FunctionKind kind);  // "gaussian" / "rosenbrock"
FunctionKind function_from_string(const std::string& name);

struct SyntheticFunction {
  FunctionKind kind = FunctionKind::isotropic_gaussian;
  int dim = 2;

  Vector optimum_point() const;
  double optimum_value() const;
  double operator()(const Vector& x) const;
};

struct IterationRow {
  int iteration = 0;
  double best_value = 0.0;
  double optimality_gap = 0.0;
};

struct TrialConfig {
  SearchConfig search;
  SyntheticFunction function;
  int iterations = 15;
  std::uint64_t seed = 0;
  SimulationMode simulation = SimulationMode::discrete;
};

struct TrialResult {
  Method method = Method::sps_bo;
  SyntheticFunction function;
  int trial = 0;
  std::uint64_t seed = 0;
  std::vector<IterationRow> rows;
  std::string error;  // empty on success
};

/// Called after every iteration with the search state (already advanced).
using TrialObserver = std::function<void(const SequentialSearch&, const IterationRow&)>;

TrialResult run_trial(const TrialConfig& config, const TrialObserver& observer = {});

struct ExperimentConfig {
  std::vector<Method> methods{Method::sls, Method::sps_random, Method::sps_bo};
  std::vector<FunctionKind> functions{FunctionKind::isotropic_gaussian};
  std::vector<int> dims{5};
  int trials = 50;
  int iterations = 15;
  std::uint64_t base_seed = 0;
  SearchConfig search;  // method field is overridden per run
  SimulationMode simulation = SimulationMode::discrete;
  int jobs = 1;
};

/// All trials in (method, function, dim, trial) order; trial t uses seed base_seed + t.
std::vector<TrialResult> run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<TrialResult>& results);

struct CsvRow {
  std::string method;
  std::string function;
  int dim = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int iteration = 0;
  double best_value = 0.0;
  double optimality_gap = 0.0;
  std::string error;
};

std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace planesearch

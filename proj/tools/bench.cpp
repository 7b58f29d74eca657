// Synthetic benchmark driver.
//
//   bench run --method all --function gaussian --dim 5 --iters 15 --trials 50 --seed 0 --out gaussian5.csv
//   bench compare --in gaussian5.csv --iter 10

#include "planesearch/analysis.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace planesearch;

namespace {

int run_command(const std::string& method, const std::string& function, int dim, int iters, int trials,
                std::uint64_t seed, int grid_res, int grid_levels, const std::string& out_path, bool continuous,
                int jobs) {
  ExperimentConfig config;
  if (method == "all") {
    config.methods = {Method::sls, Method::sps_random, Method::sps_bo};
  } else {
    config.methods = {method_from_string(method)};
  }
  config.functions = {function_from_string(function)};
  config.dims = {dim};
  config.trials = trials;
  config.iterations = iters;
  config.base_seed = seed;
  config.search.grid.resolution = grid_res;
  config.search.grid.levels = grid_levels;
  config.search.grid.validate();
  config.simulation = continuous ? SimulationMode::continuous : SimulationMode::discrete;
  config.jobs = jobs;

  const auto results = run_experiment(config);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "bench: cannot open " << out_path << " for writing\n";
    return 1;
  }
  write_csv(out, results);
  int failures = 0;
  for (const auto& r : results)
    if (!r.error.empty()) ++failures;
  if (failures) std::cerr << "bench: " << failures << " trial(s) failed; see the error column\n";
  return 0;
}

int compare_command(const std::string& in_path, int iteration, double alpha) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "bench: cannot open " << in_path << "\n";
    return 1;
  }
  const auto rows = read_csv(in);
  for (const Comparison& cmp : compare_at_iteration(rows, iteration, alpha)) {
    std::printf("%s %dD, iteration %d\n", cmp.function.c_str(), cmp.dim, cmp.iteration);
    std::printf("  %-12s %6s %14s %14s\n", "method", "trials", "mean gap", "median gap");
    for (const MethodSummary& m : cmp.methods)
      std::printf("  %-12s %6d %14.6g %14.6g\n", m.method.c_str(), m.trials, m.mean_gap, m.median_gap);
    for (const PairComparison& p : cmp.pairs)
      std::printf("  %s vs %s: U=%g p=%.4g (alpha=%.4g, %s) f=%.3f [P(%s gap < %s gap)]\n", p.first.c_str(),
                  p.second.c_str(), p.test.u_a, p.test.p_two_sided, p.alpha,
                  p.significant ? "significant" : "not significant", p.test.effect_size, p.second.c_str(),
                  p.first.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential subspace search benchmark on synthetic goodness functions"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run simulated-user trials and write a CSV");
  std::string method = "all", function = "gaussian", out_path;
  int dim = 5, iters = 15, trials = 50, grid_res = 5, grid_levels = 4, jobs = 1;
  std::uint64_t seed = 0;
  bool continuous = false;
  run->add_option("--method", method, "sls | sps-random | sps-bo | all")
      ->check(CLI::IsMember({"sls", "sps-random", "sps-bo", "all"}));
  run->add_option("--function", function, "gaussian | rosenbrock")->check(CLI::IsMember({"gaussian", "rosenbrock"}));
  run->add_option("--dim", dim, "Dimensionality")->check(CLI::PositiveNumber);
  run->add_option("--iters", iters, "Iterations per trial")->check(CLI::PositiveNumber);
  run->add_option("--trials", trials, "Trials per method")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Base seed; trial t uses seed + t");
  run->add_option("--grid-res", grid_res, "Grid resolution (odd)");
  run->add_option("--grid-levels", grid_levels, "Zoom levels per plane");
  run->add_option("--out", out_path, "Output CSV")->required();
  run->add_flag("--continuous-sim", continuous, "Simulate plane choices on a fine lattice instead of the grid");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* compare = app.add_subcommand("compare", "Summarize a CSV at one iteration");
  std::string in_path;
  int iteration = 15;
  double alpha = 0.05;
  compare->add_option("--in", in_path, "Input CSV")->required();
  compare->add_option("--iter", iteration, "Iteration to compare")->required();
  compare->add_option("--alpha", alpha, "Family-wise significance level");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run)
      return run_command(method, function, dim, iters, trials, seed, grid_res, grid_levels, out_path, continuous,
                         jobs);
    return compare_command(in_path, iteration, alpha);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 1;
  }
}

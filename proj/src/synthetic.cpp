#include "planesearch/synthetic.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace planesearch {

std::string to_string(FunctionKind kind) {
  return kind == FunctionKind::isotropic_gaussian ? "gaussian" : "rosenbrock";
}

FunctionKind function_from_string(const std::string& name) {
  if (name == "gaussian" || name == "isotropic_gaussian") return FunctionKind::isotropic_gaussian;
  if (name == "rosenbrock" || name == "neg_scaled_rosenbrock") return FunctionKind::neg_scaled_rosenbrock;
  throw std::invalid_argument("unknown function: " + name);
}

Vector SyntheticFunction::optimum_point() const {
  return Vector::Constant(dim, kind == FunctionKind::isotropic_gaussian ? 0.3 : 0.25);
}

double SyntheticFunction::optimum_value() const { return kind == FunctionKind::isotropic_gaussian ? 1.0 : 0.0; }

double SyntheticFunction::operator()(const Vector& x) const {
  if (x.size() != dim) throw std::invalid_argument("SyntheticFunction: dimension mismatch");
  return kind == FunctionKind::isotropic_gaussian ? isotropic_gaussian(x) : neg_scaled_rosenbrock(x);
}

TrialResult run_trial(const TrialConfig& config, const TrialObserver& observer) {
  if (config.iterations < 1) throw std::invalid_argument("run_trial: iterations must be >= 1");
  TrialResult result;
  result.method = config.search.method;
  result.function = config.function;
  result.seed = config.seed;

  const SyntheticFunction& f = config.function;
  const GoodnessOracle oracle = [&f](const Vector& x) { return f(x); };
  SequentialSearch search(SearchSpace(f.dim), config.search, config.seed);

  double best = -std::numeric_limits<double>::infinity();
  Index scored = 0;
  for (int k = 1; k <= config.iterations; ++k) {
    const SimulationResult sim =
        search.uses_plane() ? simulate_plane_session(search.plane(), config.search.grid, oracle, config.simulation)
                            : simulate_line_session(search.line(), config.search.line_samples, oracle);
    search.submit(sim.intent, k < config.iterations);

    const auto& points = search.dataset().points();
    for (; scored < static_cast<Index>(points.size()); ++scored)
      best = std::max(best, f(points[static_cast<std::size_t>(scored)]));
    const IterationRow row{k, best, std::max(0.0, f.optimum_value() - best)};
    result.rows.push_back(row);
    if (observer) observer(search, row);
  }
  return result;
}

std::vector<TrialResult> run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  std::vector<TrialConfig> jobs;
  std::vector<int> trial_index;
  for (Method method : config.methods)
    for (FunctionKind kind : config.functions)
      for (int dim : config.dims)
        for (int t = 0; t < config.trials; ++t) {
          TrialConfig tc;
          tc.search = config.search;
          tc.search.method = method;
          tc.function = SyntheticFunction{kind, dim};
          tc.iterations = config.iterations;
          tc.seed = config.base_seed + static_cast<std::uint64_t>(t);
          tc.simulation = config.simulation;
          jobs.push_back(tc);
          trial_index.push_back(t);
        }

  std::vector<TrialResult> results(jobs.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = run_trial(jobs[i]);
    } catch (const std::exception& e) {
      results[i].method = jobs[i].search.method;
      results[i].function = jobs[i].function;
      results[i].seed = jobs[i].seed;
      results[i].error = e.what();
    }
    results[i].trial = trial_index[i];
  };

  const int workers = std::max(1, std::min<int>(config.jobs, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_one(i);
      });
    for (auto& th : pool) th.join();
  }
  return results;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sanitize(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ' ');
  return s;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialResult>& results) {
  out << "method,function,dim,trial,seed,iteration,best_value,optimality_gap,error\n";
  for (const TrialResult& r : results) {
    const std::string prefix = to_string(r.method) + "," + to_string(r.function.kind) + "," +
                               std::to_string(r.function.dim) + "," + std::to_string(r.trial) + "," +
                               std::to_string(r.seed) + ",";
    for (const IterationRow& row : r.rows)
      out << prefix << row.iteration << "," << format_double(row.best_value) << ","
          << format_double(row.optimality_gap) << ",\n";
    if (!r.error.empty())
      out << prefix << (r.rows.size() + 1) << ",nan,nan," << sanitize(r.error) << "\n";
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty input");
  if (line.rfind("method,function,dim,trial,seed,iteration", 0) != 0)
    throw std::runtime_error("read_csv: unexpected header");
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 9) throw std::runtime_error("read_csv: line " + std::to_string(line_no) + ": expected 9 fields");
    CsvRow row;
    row.method = fields[0];
    row.function = fields[1];
    row.dim = std::stoi(fields[2]);
    row.trial = std::stoi(fields[3]);
    row.seed = std::stoull(fields[4]);
    row.iteration = std::stoi(fields[5]);
    row.best_value = std::strtod(fields[6].c_str(), nullptr);
    row.optimality_gap = std::strtod(fields[7].c_str(), nullptr);
    row.error = fields[8];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace planesearch

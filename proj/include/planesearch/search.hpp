#pragma once

// The sequential subspace-search loop: show a subspace, record the response
// as preference data, refit the model, build the next subspace. Used by both
// the synthetic benchmark (simulated responses) and the gallery service
// (human responses), so both paths go through identical state transitions.

#include "planesearch/grid.hpp"
#include "planesearch/subspace.hpp"

#include <optional>
#include <string>

namespace planesearch {

enum class Method { sls, sps_random, sps_bo };

std::string to_string(Method method);
Method method_from_string(const std::string& name);  // accepts "sps-bo" and "sps_bo" forms

struct SearchConfig {
  Method method = Method::sps_bo;
  GridSpec grid;
  AcquisitionConfig acquisition;
  HyperPrior prior;
  FitOptions fit;
  PlaneOptions plane;  // plane.best_mode also selects x+ for the other methods
  double initial_half_extent = 0.5;
  int line_samples = 1000;
};

class SequentialSearch {
 public:
  SequentialSearch(SearchSpace space, SearchConfig config, std::uint64_t seed);

  const SearchConfig& config() const { return config_; }
  const SearchSpace& space() const { return dataset_.space(); }
  const Dataset& dataset() const { return dataset_; }
  const std::optional<FittedModel>& model() const { return model_; }
  /// Number of responses submitted so far.
  int iteration() const { return iteration_; }

  bool uses_plane() const { return config_.method != Method::sls; }
  const Plane& plane() const;
  const Line& line() const;

  /// Current best observed point by config().plane.best_mode; the center of X
  /// before any preference data exists.
  Vector current_best() const;

  /// Records the response to the current subspace. When `prepare_next` is
  /// set, refits the model and constructs the next subspace. The state is
  /// left untouched if fitting or construction throws.
  void submit(const PreferenceIntent& response, bool prepare_next = true);

  // Snapshot support.
  struct State {
    Dataset dataset;
    std::optional<Plane> plane;
    std::optional<Line> line;
    int iteration = 0;
    std::string plane_rng;
    std::string acquisition_rng;
  };
  State state() const;
  static SequentialSearch restore(SearchConfig config, State state);

 private:
  SequentialSearch(SearchConfig config, State state);

  SearchConfig config_;
  Dataset dataset_;
  std::optional<FittedModel> model_;
  std::optional<Plane> plane_;
  std::optional<Line> line_;
  int iteration_ = 0;
  RandomSource plane_rng_;
  RandomSource acquisition_rng_;
};

}  // namespace planesearch

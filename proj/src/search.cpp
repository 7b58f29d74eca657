#include "planesearch/search.hpp"

#include <algorithm>

namespace planesearch {

std::string to_string(Method method) {
  switch (method) {
    case Method::sls: return "sls";
    case Method::sps_random: return "sps-random";
    case Method::sps_bo: return "sps-bo";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "sls") return Method::sls;
  if (n == "sps-random") return Method::sps_random;
  if (n == "sps-bo") return Method::sps_bo;
  throw std::invalid_argument("unknown method: " + name);
}

SequentialSearch::SequentialSearch(SearchSpace space, SearchConfig config, std::uint64_t seed)
    : config_(std::move(config)),
      dataset_(space),
      plane_rng_(seed, Stream::plane),
      acquisition_rng_(seed, Stream::acquisition) {
  config_.grid.validate();
  config_.acquisition.validate();
  if (uses_plane()) {
    plane_ = initial_plane(space, plane_rng_, config_.initial_half_extent);
  } else {
    line_ = initial_line(space, plane_rng_);
  }
}

SequentialSearch::SequentialSearch(SearchConfig config, State state)
    : config_(std::move(config)),
      dataset_(std::move(state.dataset)),
      plane_(std::move(state.plane)),
      line_(std::move(state.line)),
      iteration_(state.iteration),
      plane_rng_(0),
      acquisition_rng_(0) {
  plane_rng_.set_state(state.plane_rng);
  acquisition_rng_.set_state(state.acquisition_rng);
  if (uses_plane() != plane_.has_value() || uses_plane() == line_.has_value())
    throw std::invalid_argument("SequentialSearch::restore: subspace does not match the method");
  if (dataset_.size() >= 2 && !dataset_.records().empty())
    model_ = map_fit(dataset_, config_.prior, config_.fit);
}

const Plane& SequentialSearch::plane() const {
  if (!plane_) throw InvalidState("SequentialSearch: line-search runs have no plane");
  return *plane_;
}

const Line& SequentialSearch::line() const {
  if (!line_) throw InvalidState("SequentialSearch: plane-search runs have no line");
  return *line_;
}

Vector SequentialSearch::current_best() const {
  if (config_.plane.best_mode == BestMode::last_chosen && !dataset_.records().empty())
    return dataset_.point(dataset_.records().back().winner);
  if (model_) return dataset_.point(planesearch::current_best(*model_, config_.plane.best_mode));
  return space().center();
}

void SequentialSearch::submit(const PreferenceIntent& response, bool prepare_next) {
  Dataset next_data = dataset_;
  if (response.losers.empty()) {
    next_data.add_point(response.winner);
  } else {
    next_data.add(response);
  }

  std::optional<FittedModel> next_model;
  std::optional<Plane> next_plane = plane_;
  std::optional<Line> next_line = line_;
  RandomSource plane_rng = plane_rng_;
  RandomSource acquisition_rng = acquisition_rng_;

  if (prepare_next) {
    if (next_data.size() >= 2 && !next_data.records().empty())
      next_model = map_fit(next_data, config_.prior, config_.fit);

    switch (config_.method) {
      case Method::sps_bo:
        next_plane = next_model ? construct_plane(*next_model, config_.acquisition, acquisition_rng, config_.plane)
                                : initial_plane(next_data.space(), plane_rng, config_.initial_half_extent);
        break;
      case Method::sps_random: {
        const Vector center =
            next_model ? next_data.point(planesearch::current_best(*next_model, config_.plane.best_mode))
                       : next_data.space().center();
        next_plane = random_plane(center, plane_rng, config_.plane.boundary_mode);
        break;
      }
      case Method::sls:
        next_line = next_model ? construct_line(*next_model, config_.acquisition, acquisition_rng,
                                                config_.plane.best_mode)
                               : initial_line(next_data.space(), plane_rng);
        break;
    }
  }

  dataset_ = std::move(next_data);
  model_ = std::move(next_model);
  plane_ = std::move(next_plane);
  line_ = std::move(next_line);
  plane_rng_ = plane_rng;
  acquisition_rng_ = acquisition_rng;
  ++iteration_;
}

SequentialSearch::State SequentialSearch::state() const {
  return State{dataset_, plane_, line_, iteration_, plane_rng_.state(), acquisition_rng_.state()};
}

SequentialSearch SequentialSearch::restore(SearchConfig config, State state) {
  return SequentialSearch(std::move(config), std::move(state));
}

}  // namespace planesearch

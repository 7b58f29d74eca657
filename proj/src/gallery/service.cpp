#include "planesearch/gallery/service.hpp"

#include <chrono>
#include <cstdio>

namespace planesearch::gallery {

TokenGenerator::TokenGenerator() {
  std::random_device device;
  std::seed_seq seq{device(), device(), device(), device(), device(), device(), device(), device()};
  engine_.seed(seq);
}

TokenGenerator::TokenGenerator(std::uint64_t seed) : engine_(seed) {}

std::string TokenGenerator::next() {
  std::uint64_t hi, lo;
  {
    std::lock_guard lock(mutex_);
    hi = engine_();
    lo = engine_();
  }
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

struct GalleryService::Session {
  Session(std::string image, std::uint64_t seed_, GridSpec grid_, SequentialSearch search_)
      : image_id(std::move(image)),
        seed(seed_),
        grid(grid_),
        search(std::move(search_)),
        plane_session(search.plane(), grid) {}

  mutable std::mutex mutex;
  std::string id;
  std::string image_id;
  std::uint64_t seed;
  GridSpec grid;
  SequentialSearch search;
  PlaneSession plane_session;
  std::vector<SatisfiedEntry> satisfied_at;
  std::vector<ChoiceEvent> event_log;
};

GalleryService::GalleryService(ServiceOptions options) : options_(std::move(options)) {
  options_.default_grid.validate();
}

SearchConfig GalleryService::session_config(const GridSpec& grid) {
  SearchConfig config;
  config.method = Method::sps_bo;
  config.grid = grid;
  config.plane.best_mode = BestMode::last_chosen;
  return config;
}

std::int64_t GalleryService::now() const {
  if (options_.clock) return options_.clock();
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string GalleryService::add_image(Image image) {
  if (image.width < 1 || image.height < 1 ||
      image.rgb.size() != static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height) * 3)
    throw std::invalid_argument("add_image: inconsistent image buffer");
  auto stored = std::make_shared<const Image>(std::move(image));
  std::unique_lock lock(images_mutex_);
  for (;;) {
    std::string id = tokens_.next();
    if (images_.emplace(id, stored).second) return id;
  }
}

std::string GalleryService::add_image_bytes(const std::string& encoded) { return add_image(decode_image(encoded)); }

std::shared_ptr<const Image> GalleryService::image(const std::string& id) const {
  std::shared_lock lock(images_mutex_);
  const auto it = images_.find(id);
  if (it == images_.end()) throw NotFound("unknown image: " + id);
  return it->second;
}

std::shared_ptr<GalleryService::Session> GalleryService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session: " + id);
  return it->second;
}

std::string GalleryService::insert(std::shared_ptr<Session> session) {
  std::unique_lock lock(sessions_mutex_);
  for (;;) {
    std::string id = tokens_.next();
    if (sessions_.count(id)) continue;
    session->id = id;
    sessions_.emplace(id, std::move(session));
    return id;
  }
}

std::size_t GalleryService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

Json GalleryService::grid_payload(const Session& s) const {
  Json cells = Json::array();
  for (const Cell& cell : s.plane_session.cells()) {
    cells.push_back({{"i", cell.i},
                     {"j", cell.j},
                     {"coord", Json::array({cell.coord.s, cell.coord.t})},
                     {"params", vector_to_json(cell.point)},
                     {"valid", cell.valid}});
  }
  return {{"session", s.id},
          {"image_id", s.image_id},
          {"level", s.plane_session.level()},
          {"levels", s.grid.levels},
          {"grid_res", s.grid.resolution},
          {"iteration", s.search.iteration()},
          {"grid_center", Json::array({s.plane_session.grid_center().s, s.plane_session.grid_center().t})},
          {"spacing", s.plane_session.spacing()},
          {"best", vector_to_json(s.search.current_best())},
          {"cells", std::move(cells)}};
}

Json GalleryService::create_session(const std::string& image_id, std::optional<std::uint64_t> seed,
                                    std::optional<GridSpec> grid) {
  image(image_id);
  const GridSpec spec = grid.value_or(options_.default_grid);
  spec.validate();
  const std::uint64_t s = seed ? *seed : std::random_device{}() * 0x100000000ull + std::random_device{}();
  auto session = std::make_shared<Session>(image_id, s, spec,
                                           SequentialSearch(SearchSpace(dimension), session_config(spec), s));
  std::lock_guard lock(session->mutex);
  const std::string id = insert(session);
  return {{"id", id}, {"grid", grid_payload(*session)}};
}

Json GalleryService::grid(const std::string& session_id) const {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return grid_payload(*session);
}

Json GalleryService::choose(const std::string& session_id, int i, int j) {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  Session& s = *session;

  const int r = s.grid.radius();
  if (i < -r || i > r || j < -r || j > r)
    throw RejectedChoice("cell (" + std::to_string(i) + ", " + std::to_string(j) + ") is outside the grid");
  PlaneSession next = s.plane_session;
  next.choose(i, j);

  const ChoiceEvent event{s.search.iteration(), s.plane_session.level(), i, j, now()};
  bool completed = false;
  if (next.completed()) {
    // Transactional: on fit or construction failure nothing below runs.
    s.search.submit(finalize_preference(next));
    s.plane_session = PlaneSession(s.search.plane(), s.grid);
    completed = true;
  } else {
    s.plane_session = std::move(next);
  }
  s.event_log.push_back(event);
  return {{"grid", grid_payload(s)}, {"iteration", s.search.iteration()}, {"completed_plane", completed}};
}

Json GalleryService::satisfied(const std::string& session_id) {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  session->satisfied_at.push_back({session->search.iteration(), now()});
  return {{"count", session->satisfied_at.size()}, {"iteration", session->search.iteration()}};
}

Json GalleryService::best(const std::string& session_id) const {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return {{"params", vector_to_json(session->search.current_best())}};
}

Dataset GalleryService::dataset(const std::string& session_id) const {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return session->search.dataset();
}

PlaneSession GalleryService::plane_session(const std::string& session_id) const {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return session->plane_session;
}

std::vector<ChoiceEvent> GalleryService::events(const std::string& session_id) const {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return session->event_log;
}

Json GalleryService::snapshot(const std::string& session_id) const {
  const auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  const Session& s = *session;
  const SequentialSearch::State state = s.search.state();

  Json satisfied = Json::array();
  for (const SatisfiedEntry& e : s.satisfied_at) satisfied.push_back({{"iteration", e.iteration}, {"timestamp", e.timestamp_ms}});
  Json events = Json::array();
  for (const ChoiceEvent& e : s.event_log)
    events.push_back(
        {{"iteration", e.iteration}, {"level", e.level}, {"i", e.i}, {"j", e.j}, {"timestamp", e.timestamp_ms}});

  return {{"version", 1},
          {"image_id", s.image_id},
          {"seed", s.seed},
          {"iteration", state.iteration},
          {"dataset", dataset_to_json(state.dataset)},
          {"plane_session", session_to_json(s.plane_session)},
          {"rng", {{"plane", state.plane_rng}, {"acquisition", state.acquisition_rng}}},
          {"satisfied_at", std::move(satisfied)},
          {"event_log", std::move(events)}};
}

namespace {

const Json& member(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) throw JsonFormatError(where + ": expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw JsonFormatError(where + ": missing \"" + key + "\"");
  return *it;
}

std::int64_t integer(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) throw JsonFormatError(where + ": expected an integer");
  return value.get<std::int64_t>();
}

std::string text(const Json& value, const std::string& where) {
  if (!value.is_string()) throw JsonFormatError(where + ": expected a string");
  return value.get<std::string>();
}

}  // namespace

Json GalleryService::restore(const Json& doc) {
  if (integer(member(doc, "version", "snapshot"), "snapshot.version") != 1)
    throw JsonFormatError("snapshot.version: unsupported version");
  const std::string image_id = text(member(doc, "image_id", "snapshot"), "snapshot.image_id");
  image(image_id);
  const Json& seed_doc = member(doc, "seed", "snapshot");
  if (!seed_doc.is_number_unsigned() && !(seed_doc.is_number_integer() && seed_doc.get<std::int64_t>() >= 0))
    throw JsonFormatError("snapshot.seed: expected a non-negative integer");
  const std::uint64_t seed = seed_doc.get<std::uint64_t>();

  PlaneSession plane_session = session_from_json(member(doc, "plane_session", "snapshot"));
  Dataset dataset = dataset_from_json(member(doc, "dataset", "snapshot"));
  if (dataset.space().dim() != dimension) throw JsonFormatError("snapshot.dataset: expected n = 12");
  if (plane_session.plane().center.size() != dimension)
    throw JsonFormatError("snapshot.plane_session: expected a 12-dimensional plane");
  const int iteration = static_cast<int>(integer(member(doc, "iteration", "snapshot"), "snapshot.iteration"));
  if (iteration < 0) throw JsonFormatError("snapshot.iteration: negative");
  const Json& rng = member(doc, "rng", "snapshot");
  SequentialSearch::State state{std::move(dataset),
                                plane_session.plane(),
                                std::nullopt,
                                iteration,
                                text(member(rng, "plane", "snapshot.rng"), "snapshot.rng.plane"),
                                text(member(rng, "acquisition", "snapshot.rng"), "snapshot.rng.acquisition")};

  std::vector<SatisfiedEntry> satisfied;
  const Json& sat = member(doc, "satisfied_at", "snapshot");
  if (!sat.is_array()) throw JsonFormatError("snapshot.satisfied_at: expected an array");
  for (std::size_t k = 0; k < sat.size(); ++k) {
    const std::string where = "snapshot.satisfied_at[" + std::to_string(k) + "]";
    satisfied.push_back({static_cast<int>(integer(member(sat[k], "iteration", where), where + ".iteration")),
                         integer(member(sat[k], "timestamp", where), where + ".timestamp")});
  }
  std::vector<ChoiceEvent> events;
  const Json& log = member(doc, "event_log", "snapshot");
  if (!log.is_array()) throw JsonFormatError("snapshot.event_log: expected an array");
  for (std::size_t k = 0; k < log.size(); ++k) {
    const std::string where = "snapshot.event_log[" + std::to_string(k) + "]";
    const Json& e = log[k];
    events.push_back({static_cast<int>(integer(member(e, "iteration", where), where + ".iteration")),
                      static_cast<int>(integer(member(e, "level", where), where + ".level")),
                      static_cast<int>(integer(member(e, "i", where), where + ".i")),
                      static_cast<int>(integer(member(e, "j", where), where + ".j")),
                      integer(member(e, "timestamp", where), where + ".timestamp")});
  }

  const GridSpec spec = plane_session.spec();
  SequentialSearch search = [&] {
    try {
      return SequentialSearch::restore(session_config(spec), std::move(state));
    } catch (const std::invalid_argument& e) {
      throw JsonFormatError(std::string("snapshot: ") + e.what());
    }
  }();
  auto session = std::make_shared<Session>(image_id, seed, spec, std::move(search));
  session->plane_session = std::move(plane_session);
  session->satisfied_at = std::move(satisfied);
  session->event_log = std::move(events);
  std::lock_guard lock(session->mutex);
  const std::string id = insert(session);
  return {{"id", id}, {"grid", grid_payload(*session)}};
}

}  // namespace planesearch::gallery

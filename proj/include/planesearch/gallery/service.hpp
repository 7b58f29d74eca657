#pragma once

// In-memory session store for the interactive gallery. Each session runs the
// same SequentialSearch loop as the benchmark, with clicks on the zoomable
// grid replacing the simulated user. All results are JSON documents so the
// HTTP layer stays a thin router.

#include "planesearch/gallery/enhance.hpp"
#include "planesearch/gallery/image.hpp"
#include "planesearch/json_io.hpp"
#include "planesearch/search.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace planesearch::gallery {

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request content that is well-formed JSON but semantically unusable.
class MalformedRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 128-bit random hex tokens. Thread-safe.
class TokenGenerator {
 public:
  TokenGenerator();
  explicit TokenGenerator(std::uint64_t seed);
  std::string next();

 private:
  std::mutex mutex_;
  std::mt19937_64 engine_;
};

struct ChoiceEvent {
  int iteration = 0;
  int level = 0;
  int i = 0;
  int j = 0;
  std::int64_t timestamp_ms = 0;
};

struct SatisfiedEntry {
  int iteration = 0;
  std::int64_t timestamp_ms = 0;
};

struct ServiceOptions {
  GridSpec default_grid;
  /// Milliseconds since the epoch; replaceable for deterministic tests.
  std::function<std::int64_t()> clock;
};

class GalleryService {
 public:
  static constexpr int dimension = EnhanceParams::size;

  explicit GalleryService(ServiceOptions options = {});

  /// Search configuration used by every session; a headless SequentialSearch
  /// built with it and the session seed reproduces the session exactly.
  static SearchConfig session_config(const GridSpec& grid);

  std::string add_image(Image image);
  std::string add_image_bytes(const std::string& encoded);
  std::shared_ptr<const Image> image(const std::string& id) const;

  /// {id, grid}
  Json create_session(const std::string& image_id, std::optional<std::uint64_t> seed = std::nullopt,
                      std::optional<GridSpec> grid = std::nullopt);
  Json grid(const std::string& session_id) const;
  /// {grid, iteration, completed_plane}
  Json choose(const std::string& session_id, int i, int j);
  /// {count, iteration}
  Json satisfied(const std::string& session_id);
  /// {params}
  Json best(const std::string& session_id) const;
  Json snapshot(const std::string& session_id) const;
  /// {id, grid}; the restored session gets a fresh id.
  Json restore(const Json& document);

  std::size_t session_count() const;

  // Read-only views for tests and tooling.
  Dataset dataset(const std::string& session_id) const;
  PlaneSession plane_session(const std::string& session_id) const;
  std::vector<ChoiceEvent> events(const std::string& session_id) const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string insert(std::shared_ptr<Session> session);
  Json grid_payload(const Session& session) const;
  std::int64_t now() const;

  ServiceOptions options_;
  mutable TokenGenerator tokens_;
  mutable std::shared_mutex images_mutex_;
  std::unordered_map<std::string, std::shared_ptr<const Image>> images_;
  mutable std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace planesearch::gallery

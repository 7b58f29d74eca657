#pragma once

#include "planesearch/gallery/service.hpp"

namespace httplib {
class Server;
}

namespace planesearch::gallery {

/// Registers the JSON API on `server`:
///
///   POST /images                      PNG or JPEG body -> {id}
///   POST /sessions                    {image_id, seed?, grid_res?, levels?} -> {id, grid}
///   GET  /sessions/{id}/grid
///   POST /sessions/{id}/choose        {i, j} -> {grid, iteration, completed_plane}
///   POST /sessions/{id}/satisfied     -> {count, iteration}
///   GET  /sessions/{id}/best          -> {params}
///   GET  /sessions/{id}/snapshot
///   POST /sessions/restore            snapshot -> {id, grid}
///
/// Errors are {code, message}: 404 unknown id, 409 invalid cell, 422
/// malformed request, 500 fit failure.
void install_routes(httplib::Server& server, GalleryService& service);

/// Status and error code for an exception thrown by the service.
struct ErrorMapping {
  int status;
  const char* code;
};
ErrorMapping map_exception(const std::exception& e);

}  // namespace planesearch::gallery

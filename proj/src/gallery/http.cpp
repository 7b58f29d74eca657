#include "planesearch/gallery/http.hpp"

#include <httplib.h>

namespace planesearch::gallery {

ErrorMapping map_exception(const std::exception& e) {
  if (dynamic_cast<const NotFound*>(&e)) return {404, "not_found"};
  if (dynamic_cast<const RejectedChoice*>(&e)) return {409, "invalid_cell"};
  if (dynamic_cast<const JsonFormatError*>(&e) || dynamic_cast<const MalformedRequest*>(&e)) return {422, "malformed"};
  if (dynamic_cast<const ImageDecodeError*>(&e)) return {422, "invalid_image"};
  if (dynamic_cast<const FitFailure*>(&e) || dynamic_cast<const ConstructionFailure*>(&e)) return {500, "fit_failure"};
  return {500, "internal"};
}

namespace {

template <typename Handler>
void respond(httplib::Response& res, Handler&& handler) {
  try {
    const Json body = handler();
    res.status = 200;
    res.set_content(body.dump(), "application/json");
  } catch (const std::exception& e) {
    const ErrorMapping m = map_exception(e);
    res.status = m.status;
    res.set_content(Json{{"code", m.code}, {"message", e.what()}}.dump(-1, ' ', false, Json::error_handler_t::replace),
                    "application/json");
  }
}

Json body_json(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json doc = parse_json(req.body);
  if (!doc.is_object()) throw MalformedRequest("request body must be a JSON object");
  return doc;
}

int int_field(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw MalformedRequest(std::string("missing \"") + key + "\"");
  if (!it->is_number_integer()) throw MalformedRequest(std::string("\"") + key + "\" must be an integer");
  const auto v = it->get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw MalformedRequest(std::string("\"") + key + "\" out of range");
  return static_cast<int>(v);
}

Json create_session(GalleryService& service, const httplib::Request& req) {
  const Json doc = body_json(req);
  const auto image = doc.find("image_id");
  if (image == doc.end() || !image->is_string()) throw MalformedRequest("\"image_id\" must be a string");
  std::optional<std::uint64_t> seed;
  if (const auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0))
      throw MalformedRequest("\"seed\" must be a non-negative integer");
    seed = it->get<std::uint64_t>();
  }
  std::optional<GridSpec> grid;
  if (doc.contains("grid_res") || doc.contains("levels")) {
    GridSpec spec;
    if (doc.contains("grid_res")) spec.resolution = int_field(doc, "grid_res");
    if (doc.contains("levels")) spec.levels = int_field(doc, "levels");
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw MalformedRequest(e.what());
    }
    grid = spec;
  }
  return service.create_session(image->get<std::string>(), seed, grid);
}

}  // namespace

void install_routes(httplib::Server& server, GalleryService& service) {
  server.set_payload_max_length(64u << 20);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    const char* code = res.status == 404 ? "not_found" : res.status == 413 ? "too_large" : "bad_request";
    res.set_content(Json{{"code", code}, {"message", req.method + " " + req.path + ": " + httplib::status_message(res.status)}}
                        .dump(-1, ' ', false, Json::error_handler_t::replace),
                    "application/json");
    return httplib::Server::HandlerResponse::Handled;
  });

  server.Post("/images", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return Json{{"id", service.add_image_bytes(req.body)}}; });
  });
  server.Post("/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return create_session(service, req); });
  });
  server.Post("/sessions/restore", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.restore(parse_json(req.body)); });
  });
  server.Get("/sessions/:id/grid", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.grid(req.path_params.at("id")); });
  });
  server.Post("/sessions/:id/choose", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] {
      const Json doc = body_json(req);
      return service.choose(req.path_params.at("id"), int_field(doc, "i"), int_field(doc, "j"));
    });
  });
  server.Post("/sessions/:id/satisfied", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.satisfied(req.path_params.at("id")); });
  });
  server.Get("/sessions/:id/best", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.best(req.path_params.at("id")); });
  });
  server.Get("/sessions/:id/snapshot", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.snapshot(req.path_params.at("id")); });
  });
}

}  // namespace planesearch::gallery

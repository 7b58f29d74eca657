#include "planesearch/gallery/http.hpp"

#include <doctest.h>
#include <httplib.h>

#include <thread>

using namespace planesearch;
using namespace planesearch::gallery;

namespace {

struct Running {
  GalleryService service;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  Running() {
    install_routes(server, service);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~Running() {
    server.stop();
    thread.join();
  }
};

Json body(const httplib::Result& r) {
  REQUIRE(r);
  return Json::parse(r->body);
}

std::string png_bytes() {
  Image img{3, 2, std::vector<std::uint8_t>(18, 120)};
  return encode_png(img);
}

}  // namespace

TEST_CASE("HTTP API: scripted session matches a headless run") {
  Running app;
  httplib::Client client("127.0.0.1", app.port);

  const auto uploaded = client.Post("/images", png_bytes(), "image/png");
  REQUIRE(uploaded->status == 200);
  const std::string image = body(uploaded)["id"];

  const std::uint64_t seed = 31;
  const auto created = client.Post("/sessions", Json{{"image_id", image}, {"seed", seed}}.dump(), "application/json");
  REQUIRE(created->status == 200);
  const Json session = body(created);
  const std::string id = session["id"];
  CHECK(session["grid"]["cells"].size() == 25);

  SequentialSearch headless(SearchSpace(12), GalleryService::session_config(GridSpec{}), seed);
  const int script[3][4][2] = {{{1, 1}, {0, 0}, {-2, 0}, {1, -1}},
                               {{0, 2}, {1, 0}, {0, 0}, {0, 0}},
                               {{2, 2}, {-1, 0}, {1, 1}, {0, -1}}};
  for (const auto& plane_clicks : script) {
    PlaneSession plane(headless.plane(), GridSpec{});
    for (const auto& c : plane_clicks) {
      // Skip clicks the headless grid rejects; the service must reject them too.
      if (!plane.cell(c[0], c[1]).valid) {
        const auto rejected =
            client.Post("/sessions/" + id + "/choose", Json{{"i", c[0]}, {"j", c[1]}}.dump(), "application/json");
        CHECK(rejected->status == 409);
        CHECK(body(rejected)["code"] == "invalid_cell");
        plane.choose(0, 0);
        client.Post("/sessions/" + id + "/choose", Json{{"i", 0}, {"j", 0}}.dump(), "application/json");
        continue;
      }
      plane.choose(c[0], c[1]);
      const auto r =
          client.Post("/sessions/" + id + "/choose", Json{{"i", c[0]}, {"j", c[1]}}.dump(), "application/json");
      REQUIRE(r->status == 200);
      CHECK(body(r)["completed_plane"] == plane.completed());
    }
    headless.submit(finalize_preference(plane));
  }

  const Json snap = body(client.Get("/sessions/" + id + "/snapshot"));
  CHECK(dataset_from_json(snap["dataset"]) == headless.dataset());
  CHECK(session_from_json(snap["plane_session"]).plane() == headless.plane());
  CHECK(snap["iteration"] == 3);

  const Json grid = body(client.Get("/sessions/" + id + "/grid"));
  CHECK(grid["iteration"] == 3);
  const Json best = body(client.Get("/sessions/" + id + "/best"));
  CHECK(best["params"] == vector_to_json(headless.current_best()));

  const auto sat = client.Post("/sessions/" + id + "/satisfied", "", "application/json");
  CHECK(body(sat)["count"] == 1);

  const auto restored = client.Post("/sessions/restore", snap.dump(), "application/json");
  REQUIRE(restored->status == 200);
  const std::string rid = body(restored)["id"];
  const Json again = body(client.Get("/sessions/" + rid + "/snapshot"));
  CHECK(again["dataset"] == snap["dataset"]);
  CHECK(again["plane_session"] == snap["plane_session"]);
}

TEST_CASE("HTTP API: error responses") {
  Running app;
  httplib::Client client("127.0.0.1", app.port);

  auto r = client.Get("/sessions/ffff/grid");
  CHECK(r->status == 404);
  CHECK(body(r)["code"] == "not_found");
  CHECK(body(r).contains("message"));

  r = client.Post("/sessions", R"({"image_id": "nope"})", "application/json");
  CHECK(r->status == 404);

  r = client.Post("/sessions", "{not json", "application/json");
  CHECK(r->status == 422);
  CHECK(body(r)["code"] == "malformed");

  r = client.Post("/sessions", R"({"image_id": 5})", "application/json");
  CHECK(r->status == 422);

  r = client.Post("/images", "definitely not a png", "application/octet-stream");
  CHECK(r->status == 422);
  CHECK(body(r)["code"] == "invalid_image");

  const std::string image = body(client.Post("/images", png_bytes(), "image/png"))["id"];
  r = client.Post("/sessions", Json{{"image_id", image}, {"grid_res", 4}}.dump(), "application/json");
  CHECK(r->status == 422);
  r = client.Post("/sessions", Json{{"image_id", image}, {"grid_res", 3}, {"levels", 2}}.dump(), "application/json");
  REQUIRE(r->status == 200);
  const Json s = body(r);
  CHECK(s["grid"]["cells"].size() == 9);
  const std::string id = s["id"];

  r = client.Post("/sessions/" + id + "/choose", R"({"i": 0})", "application/json");
  CHECK(r->status == 422);
  r = client.Post("/sessions/" + id + "/choose", R"({"i": 0, "j": 1.5})", "application/json");
  CHECK(r->status == 422);
  r = client.Post("/sessions/" + id + "/choose", R"({"i": 5, "j": 0})", "application/json");
  CHECK(r->status == 409);
  r = client.Post("/sessions/restore", R"({"version": 1})", "application/json");
  CHECK(r->status == 422);
  r = client.Get("/no/such/route");
  CHECK(r->status == 404);
  CHECK(body(r)["code"] == "not_found");
}

TEST_CASE("HTTP API: concurrent requests to one session are serialized") {
  Running app;
  const std::string image = app.service.add_image(Image{1, 1, {1, 2, 3}});
  const std::string id = app.service.create_session(image, 5)["id"];
  std::vector<std::thread> workers;
  std::atomic<int> ok{0};
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&] {
      httplib::Client client("127.0.0.1", app.port);
      for (int k = 0; k < 2; ++k) {
        const auto r = client.Post("/sessions/" + id + "/choose", R"({"i": 0, "j": 0})", "application/json");
        if (r && r->status == 200) ++ok;
      }
    });
  for (auto& t : workers) t.join();
  CHECK(ok == 8);
  CHECK(app.service.events(id).size() == 8);
  CHECK(app.service.grid(id)["iteration"] == 2);
}

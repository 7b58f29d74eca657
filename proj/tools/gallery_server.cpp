// HTTP service for the interactive enhancement gallery.
//
//   gallery_server --port 8080 [--static-dir ui/dist]

#include "planesearch/gallery/http.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <iostream>

using namespace planesearch;

int main(int argc, char** argv) {
  CLI::App app{"Sequential plane search gallery service"};
  std::string host = "127.0.0.1", static_dir;
  int port = 8080, grid_res = 5, levels = 4;
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  app.add_option("--static-dir", static_dir, "Serve a web client from this directory")->check(CLI::ExistingDirectory);
  app.add_option("--grid-res", grid_res, "Default grid resolution (odd)");
  app.add_option("--levels", levels, "Default zoom levels per plane");
  CLI11_PARSE(app, argc, argv);

  gallery::ServiceOptions options;
  options.default_grid.resolution = grid_res;
  options.default_grid.levels = levels;
  try {
    options.default_grid.validate();
  } catch (const std::exception& e) {
    std::cerr << "gallery_server: " << e.what() << "\n";
    return 1;
  }

  gallery::GalleryService service(options);
  httplib::Server server;
  gallery::install_routes(server, service);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    std::cerr << "gallery_server: cannot serve " << static_dir << "\n";
    return 1;
  }
  std::cout << "listening on http://" << host << ":" << port << std::endl;
  if (!server.listen(host, port)) {
    std::cerr << "gallery_server: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

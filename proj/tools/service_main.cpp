#include <iostream>

#include "CLI11.hpp"
#include "saidi/service.hpp"

int main(int argc, char** argv) {
  saidi::ServiceConfig config = saidi::ServiceConfig::from_env();
  CLI::App app{"SAIDI planning service"};
  app.add_option("--host", config.host);
  app.add_option("--port", config.port);
  app.add_option("--workers", config.workers, "overrides SAIDI_WORKERS");
  app.add_option("--session-cap", config.session_cap);
  app.add_option("--undo-depth", config.undo_depth);
  app.add_option("--token", config.token, "static bearer token");
  app.add_option("--persist-dir", config.persist_dir);
  app.add_option("--async-exact-edges", config.async_exact_edges);
  CLI11_PARSE(app, argc, argv);
  try {
    saidi::Service service(config);
    std::cerr << "listening on " << config.host << ":" << config.port << "\n";
    service.listen();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

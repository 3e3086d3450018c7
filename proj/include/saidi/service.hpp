#pragma once

#include <map>
#include <memory>
#include <string>

#include "json.hpp"

namespace saidi {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  int workers = 4;
  std::size_t session_cap = 64;
  std::size_t undo_depth = 32;
  /// When non-empty, every request needs "Authorization: Bearer <token>".
  std::string token;
  /// When non-empty, sessions are saved here as NetworkDocuments after each change.
  std::string persist_dir;
  /// Exact SAIDI requests on networks with more edges run as background jobs.
  std::size_t async_exact_edges = 24;

  /// Reads SAIDI_WORKERS for the worker count.
  static ServiceConfig from_env();
};

struct HttpResult {
  int status = 200;
  nlohmann::json body;
};

class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Transport-free request handling (the HTTP server forwards to this).
  HttpResult handle(const std::string& method, const std::string& path,
                    const std::map<std::string, std::string>& query, const std::string& body,
                    const std::string& authorization = {});

  /// Binds and serves on a background thread; returns the bound port (config.port 0 picks one).
  int start();
  /// Serves on the calling thread.
  void listen();
  void stop();

  const ServiceConfig& config() const { return config_; }

 private:
  struct Impl;
  ServiceConfig config_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace saidi

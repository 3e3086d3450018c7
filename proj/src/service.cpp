#include "saidi/service.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <mutex>
#include <random>
#include <regex>
#include <shared_mutex>
#include <thread>
#include <vector>

#include "httplib.h"
#include "saidi/analysis.hpp"
#include "saidi/io.hpp"

namespace saidi {

using nlohmann::json;

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig c;
  if (const char* w = std::getenv("SAIDI_WORKERS")) {
    int n = std::atoi(w);
    if (n > 0) c.workers = n;
  }
  return c;
}

namespace {

struct HttpError {
  int status;
  std::string message;
};

struct Session {
  std::mutex mutex;  // serializes mutations
  std::shared_ptr<const NetworkDocument> doc;
  std::vector<std::shared_ptr<const NetworkDocument>> undo;
  std::optional<double> p;
  std::vector<CandidateEdge> candidates;
};

struct Job {
  std::shared_future<json> result;
};

std::optional<double> query_double(const std::map<std::string, std::string>& q, const char* key) {
  auto it = q.find(key);
  if (it == q.end() || it->second.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw HttpError{422, std::string(key) + " must be a number"};
  }
}

long query_int(const std::map<std::string, std::string>& q, const char* key, long fallback) {
  auto v = query_double(q, key);
  if (!v) return fallback;
  if (*v != std::floor(*v)) throw HttpError{422, std::string(key) + " must be an integer"};
  return static_cast<long>(*v);
}

std::string query_string(const std::map<std::string, std::string>& q, const char* key, const std::string& fallback) {
  auto it = q.find(key);
  return it == q.end() || it->second.empty() ? fallback : it->second;
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw HttpError{422, std::string("invalid JSON body: ") + e.what()};
  }
}

CandidateEdge edge_from(const json& j) {
  const json& e = j.contains("edge") ? j["edge"] : j;
  json arr = json::array({e});
  auto c = parse_candidates(arr);
  if (!e.contains("id")) c[0].id = "";
  return c[0];
}

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  std::shared_mutex sessions_mutex;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::mutex jobs_mutex;
  std::map<std::string, Job> jobs;
  std::mt19937_64 rng{std::random_device{}()};
  std::mutex rng_mutex;
  httplib::Server server;
  std::thread thread;

  std::string fresh_token() {
    std::lock_guard lock(rng_mutex);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
    return buf;
  }

  std::shared_ptr<Session> session(const std::string& id) {
    std::shared_lock lock(sessions_mutex);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw HttpError{404, "unknown session " + id};
    return it->second;
  }

  void persist(const std::string& id, const Session& s) {
    if (config.persist_dir.empty()) return;
    std::filesystem::create_directories(config.persist_dir);
    save_document(*s.doc, config.persist_dir + "/" + id + ".json");
  }

  void restore() {
    if (config.persist_dir.empty() || !std::filesystem::is_directory(config.persist_dir)) return;
    for (const auto& entry : std::filesystem::directory_iterator(config.persist_dir)) {
      if (entry.path().extension() != ".json") continue;
      try {
        auto s = std::make_shared<Session>();
        s->doc = std::make_shared<NetworkDocument>(load_document(entry.path().string()));
        sessions[entry.path().stem().string()] = s;
      } catch (const std::exception&) {
        // unreadable snapshot: skip
      }
    }
  }

  std::optional<double> p_for(const Session& s, const std::map<std::string, std::string>& q) {
    auto p = query_double(q, "p");
    return p ? p : s.p;
  }

  HttpResult route(const std::string& method, const std::string& path,
                   const std::map<std::string, std::string>& q, const std::string& body) {
    static const std::regex session_re(R"(^/sessions/([^/]+)(/([a-z]+))?/?$)");
    static const std::regex job_re(R"(^/jobs/([^/]+)/?$)");
    std::smatch m;
    if (path == "/health" && method == "GET") return {200, {{"status", "ok"}}};
    if ((path == "/sessions" || path == "/sessions/") && method == "POST") return create(body);
    if ((path == "/sessions" || path == "/sessions/") && method == "GET") {
      std::shared_lock lock(sessions_mutex);
      json ids = json::array();
      for (const auto& [id, s] : sessions) ids.push_back(id);
      return {200, {{"sessions", ids}}};
    }
    if (std::regex_match(path, m, job_re)) {
      if (method != "GET") throw HttpError{405, "method not allowed"};
      return job(m[1]);
    }
    if (!std::regex_match(path, m, session_re)) throw HttpError{404, "no route for " + path};
    const std::string id = m[1];
    const std::string action = m[3];
    auto s = session(id);
    if (action.empty()) {
      if (method == "GET") return {200, summary(id, *s)};
      if (method == "DELETE") {
        std::unique_lock lock(sessions_mutex);
        sessions.erase(id);
        if (!config.persist_dir.empty()) std::filesystem::remove(config.persist_dir + "/" + id + ".json");
        return {200, {{"deleted", id}}};
      }
    } else if (action == "document" && method == "GET") {
      std::lock_guard lock(s->mutex);
      return {200, to_json(*s->doc)};
    } else if (action == "saidi" && method == "GET") {
      return saidi(*s, q);
    } else if (action == "risks" && method == "GET") {
      auto snap = snapshot(*s);
      long top = query_int(q, "top", 5), order = query_int(q, "order", 3);
      if (top < 0) throw HttpError{422, "top must be nonnegative"};
      if (order < 1 || order > 3) throw HttpError{422, "order must be within 1..3"};
      return {200, risks_report(snap->network, p_for(*s, q), static_cast<std::size_t>(top), static_cast<int>(order))};
    } else if (action == "whatif" && method == "POST") {
      json j = parse_body(body);
      auto snap = snapshot(*s);
      std::optional<double> p = j.contains("p") ? std::optional<double>(j["p"].get<double>()) : p_for(*s, q);
      return {200, whatif_report(snap->network, edge_from(j), p, j.value("mode", "auto"))};
    } else if (action == "commit" && method == "POST") {
      return commit(id, *s, parse_body(body));
    } else if (action == "undo" && method == "POST") {
      std::lock_guard lock(s->mutex);
      if (s->undo.empty()) throw HttpError{409, "nothing to undo"};
      s->doc = s->undo.back();
      s->undo.pop_back();
      persist(id, *s);
      return {200, summary_locked(id, *s)};
    } else if (action == "audit" && method == "GET") {
      return {200, audit_report(snapshot(*s)->network)};
    } else if (action == "candidates" && (method == "PUT" || method == "POST")) {
      auto cands = parse_candidates(parse_body(body));
      std::lock_guard lock(s->mutex);
      s->candidates = cands;
      return {200, {{"candidates", cands.size()}}};
    } else if (action == "suggest" && (method == "GET" || method == "POST")) {
      json j = method == "POST" ? parse_body(body) : json::object();
      auto budget = j.contains("budget") ? std::optional<double>(j["budget"].get<double>()) : query_double(q, "budget");
      if (!budget) throw HttpError{422, "budget is required"};
      std::vector<CandidateEdge> cands;
      std::shared_ptr<const NetworkDocument> snap;
      std::optional<double> p;
      {
        std::lock_guard lock(s->mutex);
        cands = j.contains("candidates") ? parse_candidates(j["candidates"]) : s->candidates;
        snap = s->doc;
        p = j.contains("p") ? std::optional<double>(j["p"].get<double>()) : p_for(*s, q);
      }
      return {200, suggest_report(snap->network, cands, *budget, p, j.value("mode", query_string(q, "mode", "k-order")))};
    } else if (action == "p" && method == "PUT") {
      json j = parse_body(body);
      std::lock_guard lock(s->mutex);
      if (j.contains("p") && !j["p"].is_null()) {
        if (!j["p"].is_number()) throw HttpError{422, "p must be a number"};
        double p = j["p"].get<double>();
        check_probability(p);
        s->p = p;
      } else {
        s->p.reset();
      }
      return {200, summary_locked(id, *s)};
    } else {
      throw HttpError{404, "no route for " + method + " " + path};
    }
    throw HttpError{405, "method not allowed"};
  }

  std::shared_ptr<const NetworkDocument> snapshot(Session& s) {
    std::lock_guard lock(s.mutex);
    return s.doc;
  }

  json summary_locked(const std::string& id, const Session& s) {
    return {{"session", id},
            {"nodes", s.doc->network.node_count()},
            {"edges", s.doc->network.edge_count()},
            {"undo_depth", s.undo.size()},
            {"p", s.p ? json_number(*s.p) : json(nullptr)}};
  }

  json summary(const std::string& id, Session& s) {
    std::lock_guard lock(s.mutex);
    return summary_locked(id, s);
  }

  HttpResult create(const std::string& body) {
    NetworkDocument doc = parse_document_text(body);
    auto s = std::make_shared<Session>();
    s->doc = std::make_shared<NetworkDocument>(std::move(doc));
    std::string id;
    {
      std::unique_lock lock(sessions_mutex);
      if (sessions.size() >= config.session_cap) throw HttpError{503, "session cap reached"};
      do id = fresh_token();
      while (sessions.count(id));
      sessions[id] = s;
    }
    persist(id, *s);
    return {201, summary(id, *s)};
  }

  HttpResult saidi(Session& s, const std::map<std::string, std::string>& q) {
    AnalyzeOptions o;
    o.p = p_for(s, q);
    o.mode = query_string(q, "mode", "exact");
    o.k = static_cast<int>(query_int(q, "k", 3));
    auto snap = snapshot(s);
    check_probability(o.p);
    if (o.mode != "exact" && o.mode != "k-order" && o.mode != "polynomial")
      throw HttpError{422, "mode must be exact, k-order or polynomial"};
    if (o.mode == "k-order" && (o.k < 1 || o.k > 5)) throw HttpError{422, "k must be within 1..5"};
    if (o.mode != "k-order" && snap->network.edge_count() > config.async_exact_edges) {
      std::string token = fresh_token();
      auto fut = std::async(std::launch::async, [snap, o] { return analyze_report(snap->network, o); }).share();
      std::lock_guard lock(jobs_mutex);
      jobs[token] = Job{fut};
      return {202, {{"job", token}, {"status", "running"}, {"poll", "/jobs/" + token}}};
    }
    return {200, analyze_report(snap->network, o)};
  }

  HttpResult job(const std::string& token) {
    std::shared_future<json> fut;
    {
      std::lock_guard lock(jobs_mutex);
      auto it = jobs.find(token);
      if (it == jobs.end()) throw HttpError{404, "unknown job " + token};
      fut = it->second.result;
    }
    if (fut.wait_for(std::chrono::seconds(0)) != std::future_status::ready)
      return {202, {{"job", token}, {"status", "running"}}};
    try {
      return {200, {{"job", token}, {"status", "done"}, {"result", fut.get()}}};
    } catch (const ValidationError& e) {
      return {422, {{"job", token}, {"status", "failed"}, {"error", e.what()}}};
    } catch (const SizeGuardError& e) {
      return {422, {{"job", token}, {"status", "failed"}, {"error", e.what()}}};
    } catch (const std::exception& e) {
      return {500, {{"job", token}, {"status", "failed"}, {"error", e.what()}}};
    }
  }

  HttpResult commit(const std::string& id, Session& s, const json& j) {
    CandidateEdge c = edge_from(j);
    std::lock_guard lock(s.mutex);
    const Network& net = s.doc->network;
    if (!net.has_node(c.u)) throw HttpError{422, "unknown node " + c.u};
    if (!net.has_node(c.v)) throw HttpError{422, "unknown node " + c.v};
    if (c.u == c.v) throw HttpError{422, "endpoints must differ"};
    std::string eid = c.id.empty() ? net.fresh_edge_id() : c.id;
    if (net.has_edge(eid)) throw HttpError{409, "edge id " + eid + " already exists"};
    auto next = std::make_shared<NetworkDocument>(*s.doc);
    next->network = net.with_edge({eid, c.u, c.v, c.p_fail});
    s.undo.push_back(s.doc);
    if (s.undo.size() > config.undo_depth) s.undo.erase(s.undo.begin());
    s.doc = next;
    persist(id, s);
    json out = summary_locked(id, s);
    out["edge"] = {{"id", eid}, {"u", c.u}, {"v", c.v}, {"p_fail", json_number(c.p_fail)}};
    return {200, out};
  }
};

Service::Service(ServiceConfig config) : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
  impl_->config = config_;
  impl_->restore();
}

Service::~Service() { stop(); }

HttpResult Service::handle(const std::string& method, const std::string& path,
                           const std::map<std::string, std::string>& query, const std::string& body,
                           const std::string& authorization) {
  try {
    if (!config_.token.empty() && authorization != "Bearer " + config_.token)
      return {401, {{"error", "missing or wrong bearer token"}}};
    return impl_->route(method, path, query, body);
  } catch (const HttpError& e) {
    return {e.status, {{"error", e.message}}};
  } catch (const ValidationError& e) {
    return {422, {{"error", e.what()}}};
  } catch (const SizeGuardError& e) {
    return {422, {{"error", std::string("size guard: ") + e.what()}}};
  } catch (const json::exception& e) {
    return {422, {{"error", e.what()}}};
  } catch (const std::exception& e) {
    return {500, {{"error", e.what()}}};
  }
}

namespace {

void install(httplib::Server& server, Service& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> q;
    for (const auto& [k, v] : req.params) q[k] = v;
    HttpResult r = service.handle(req.method, req.path, q, req.body, req.get_header_value("Authorization"));
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Put(".*", forward);
  server.Delete(".*", forward);
}

}  // namespace

int Service::start() {
  auto& server = impl_->server;
  const int workers = std::max(1, config_.workers);
  server.new_task_queue = [workers] { return new httplib::ThreadPool(static_cast<std::size_t>(workers)); };
  install(server, *this);
  int port = config_.port;
  if (port == 0) port = server.bind_to_any_port(config_.host);
  else if (!server.bind_to_port(config_.host, port)) port = -1;
  if (port < 0) throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
  impl_->thread = std::thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  return port;
}

void Service::listen() {
  auto& server = impl_->server;
  const int workers = std::max(1, config_.workers);
  server.new_task_queue = [workers] { return new httplib::ThreadPool(static_cast<std::size_t>(workers)); };
  install(server, *this);
  if (!server.listen(config_.host, config_.port))
    throw Error("cannot listen on " + config_.host + ":" + std::to_string(config_.port));
}

void Service::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  std::lock_guard lock(impl_->jobs_mutex);
  for (auto& [token, job] : impl_->jobs) job.result.wait();
}

}  // namespace saidi

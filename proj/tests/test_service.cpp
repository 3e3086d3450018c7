#include <chrono>
#include <filesystem>
#include <thread>

#include "cli.hpp"
#include "doctest.h"
#include "httplib.h"
#include "saidi/analysis.hpp"
#include "saidi/generators.hpp"
#include "saidi/io.hpp"
#include "saidi/service.hpp"

using namespace saidi;
using nlohmann::json;

namespace {

std::string doc_text(const Network& net) { return dump_document(document_from_network(net)); }

struct Client {
  Service& svc;
  std::string token;
  HttpResult get(const std::string& path, std::map<std::string, std::string> q = {}) {
    return svc.handle("GET", path, q, "", token);
  }
  HttpResult post(const std::string& path, const json& body) { return svc.handle("POST", path, {}, body.dump(), token); }
  std::string create(const Network& net) {
    HttpResult r = svc.handle("POST", "/sessions", {}, doc_text(net), token);
    REQUIRE(r.status == 201);
    return "/sessions/" + r.body["session"].get<std::string>();
  }
};

}  // namespace

TEST_CASE("service sessions and analysis") {
  Service svc;
  Client c{svc};
  std::string s = c.create(ring(3));
  HttpResult r = c.get(s + "/saidi", {{"p", "0.1"}});
  REQUIRE(r.status == 200);
  CHECK(r.body["normalized"].get<double>() == doctest::Approx(0.0301).epsilon(1e-12));
  CHECK(c.get(s + "/saidi", {{"p", "2"}}).status == 422);
  CHECK(c.get(s + "/saidi", {{"p", "abc"}}).status == 422);
  CHECK(c.get(s + "/saidi", {{"mode", "magic"}}).status == 422);
  CHECK(c.get("/sessions/nope/saidi").status == 404);
  CHECK(c.get("/elsewhere").status == 404);
  CHECK(svc.handle("POST", "/sessions", {}, R"({"schema_version": 1, "nodes": [], "edges": []})").status == 422);
  CHECK(svc.handle("POST", "/sessions", {}, "not json").status == 422);
  CHECK(c.get("/health").body["status"] == "ok");

  CHECK(c.get(s + "/risks", {{"top", "0"}, {"p", "0.1"}}).body["risks"].empty());
  CHECK(c.get(s + "/risks", {{"order", "4"}}).status == 422);
  CHECK(c.get(s + "/risks", {{"top", "-1"}}).status == 422);
  HttpResult risks = c.get(s + "/risks", {{"p", "0.1"}, {"top", "3"}});
  CHECK(risks.body["risks"].size() == 3);
  CHECK(risks.body["risks"][0].contains("disconnected_nodes"));
  CHECK(risks.body["risks"][0].contains("chains"));

  // Session p is used when the query omits it.
  CHECK(svc.handle("PUT", s + "/p", {}, R"({"p": 0.1})").status == 200);
  CHECK(c.get(s + "/saidi").body["normalized"].get<double>() == doctest::Approx(0.0301).epsilon(1e-12));
  CHECK(svc.handle("PUT", s + "/p", {}, R"({"p": 7})").status == 422);

  CHECK(svc.handle("DELETE", s, {}, "").status == 200);
  CHECK(c.get(s).status == 404);
}

TEST_CASE("service whatif, commit and undo") {
  Service svc;
  Client c{svc};
  Network net = load(std::string(SAIDI_DATA_DIR) + "/mesh_sample.json");
  std::string s = c.create(net);
  json edge = {{"u", "h"}, {"v", "c"}, {"p_fail", 0.05}, {"cost", 2}};
  HttpResult before = c.get(s + "/saidi");
  HttpResult w1 = c.post(s + "/whatif", edge);
  HttpResult w2 = c.post(s + "/whatif", edge);
  REQUIRE(w1.status == 200);
  CHECK(w1.body == w2.body);
  CHECK(w1.body.contains("updated_top_risks"));
  CHECK(c.get(s + "/saidi").body == before.body);
  CHECK(w1.body["saidi"] == before.body["saidi"]);

  // Same engine and formatting as the CLI.
  std::string file = (std::filesystem::temp_directory_path() / "svc_mesh.json").string();
  save(net, file);
  std::ostringstream out, err;
  REQUIRE(run_cli({"whatif", file, "--edge", "h,c,0.05,2", "--json"}, out, err) == 0);
  CHECK(json::parse(out.str())["delta"] == w1.body["delta"]);

  CHECK(c.post(s + "/undo", json::object()).status == 409);
  HttpResult audit0 = c.get(s + "/audit");
  HttpResult commit = c.post(s + "/commit", edge);
  REQUIRE(commit.status == 200);
  CHECK(commit.body["undo_depth"] == 1);
  HttpResult after = c.get(s + "/saidi");
  CHECK(after.body["saidi"] == w1.body["new_saidi"]);
  CHECK(c.get(s + "/audit").body != audit0.body);
  CHECK(c.get(s + "/audit").body["chain_count"].get<int>() > audit0.body["chain_count"].get<int>());
  CHECK(c.post(s + "/commit", {{"id", commit.body["edge"]["id"]}, {"u", "a"}, {"v", "b"}, {"p_fail", 0.1}}).status ==
        409);
  CHECK(c.post(s + "/commit", {{"u", "a"}, {"v", "nowhere"}, {"p_fail", 0.1}}).status == 422);
  CHECK(c.post(s + "/undo", json::object()).status == 200);
  CHECK(c.get(s + "/saidi").body == before.body);
  CHECK(c.get(s + "/document").body == to_json(document_from_network(net)));
  CHECK(c.post(s + "/undo", json::object()).status == 409);

  CHECK(c.get(s + "/suggest", {{"budget", "0"}}).body["plan"].empty());
  CHECK(c.get(s + "/suggest").status == 422);
  json cands = json::array({edge, {{"u", "s"}, {"v", "i"}, {"p_fail", 0.05}, {"cost", 1}}});
  CHECK(c.post(s + "/candidates", cands).status == 200);
  HttpResult plan = c.get(s + "/suggest", {{"budget", "10"}});
  REQUIRE(plan.status == 200);
  CHECK(!plan.body["plan"].empty());
}

TEST_CASE("service limits, token and jobs") {
  ServiceConfig cfg;
  cfg.session_cap = 2;
  cfg.token = "secret";
  cfg.async_exact_edges = 5;
  Service svc(cfg);
  CHECK(svc.handle("GET", "/health", {}, "").status == 401);
  CHECK(svc.handle("GET", "/health", {}, "", "Bearer wrong").status == 401);
  Client c{svc, "Bearer secret"};
  std::string s = c.create(ring(6));
  c.create(ring(2));
  CHECK(svc.handle("POST", "/sessions", {}, doc_text(ring(1)), "Bearer secret").status == 503);

  HttpResult job = c.get(s + "/saidi", {{"p", "0.1"}});
  REQUIRE(job.status == 202);
  std::string poll = job.body["poll"];
  HttpResult done = c.get(poll);
  for (int i = 0; i < 500 && done.status == 202; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
    done = c.get(poll);
  }
  REQUIRE(done.status == 200);
  AnalyzeOptions o;
  o.p = 0.1;
  CHECK(done.body["result"] == analyze_report(ring(6), o));
  CHECK(c.get(s + "/saidi", {{"p", "0.1"}, {"mode", "k-order"}}).status == 200);
  CHECK(c.get("/jobs/unknown").status == 404);
}

TEST_CASE("service persistence") {
  auto dir = std::filesystem::temp_directory_path() / "saidi_svc_persist";
  std::filesystem::remove_all(dir);
  ServiceConfig cfg;
  cfg.persist_dir = dir.string();
  std::string s, gone;
  json doc;
  {
    Service svc(cfg);
    Client c{svc};
    s = c.create(ring(4));
    gone = c.create(ring(2));
    REQUIRE(c.post(s + "/commit", {{"u", "v1"}, {"v", "v3"}, {"p_fail", 0.1}}).status == 200);
    doc = c.get(s + "/document").body;
    REQUIRE(svc.handle("DELETE", gone, {}, "").status == 200);
  }
  Service again(cfg);
  Client c{again};
  CHECK(c.get(s + "/document").body == doc);
  CHECK(c.get(gone).status == 404);
  std::filesystem::remove_all(dir);
}

TEST_CASE("service over HTTP") {
  ServiceConfig cfg;
  cfg.port = 0;
  cfg.workers = 2;
  Service svc(cfg);
  int port = svc.start();
  REQUIRE(port > 0);
  httplib::Client http("127.0.0.1", port);
  auto created = http.Post("/sessions", doc_text(ring(3)), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  std::string id = json::parse(created->body)["session"];
  auto r = http.Get("/sessions/" + id + "/saidi?p=0.1");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["normalized"].get<double>() == doctest::Approx(0.0301).epsilon(1e-12));
  auto missing = http.Get("/sessions/zzz/risks");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body).contains("error"));

  // Concurrent commits to different sessions do not interact.
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(json::parse(http.Post("/sessions", doc_text(ring(5)), "application/json")->body)["session"]);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i)
    threads.emplace_back([&, i] {
      httplib::Client cl("127.0.0.1", port);
      for (int k = 0; k <= i; ++k)
        cl.Post("/sessions/" + ids[i] + "/commit", json{{"u", "s"}, {"v", "v3"}, {"p_fail", 0.1}}.dump(), "application/json");
    });
  for (auto& t : threads) t.join();
  for (int i = 0; i < 4; ++i) {
    auto sum = http.Get("/sessions/" + ids[i]);
    CHECK(json::parse(sum->body)["edges"] == 6 + i + 1);
    CHECK(json::parse(sum->body)["undo_depth"] == i + 1);
  }
  svc.stop();
}

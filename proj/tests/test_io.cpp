#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "saidi/errors.hpp"
#include "saidi/generators.hpp"
#include "saidi/io.hpp"

using namespace saidi;
using nlohmann::json;

namespace {

json small_doc() {
  return json::parse(R"({
    "schema_version": 1,
    "nodes": [{"id": "s", "is_source": true}, {"id": "a", "weight": 2.5}, {"id": "b"}],
    "edges": [{"id": "e1", "u": "s", "v": "a", "p_fail": 0.1},
              {"id": "e2", "u": "a", "v": "b", "p_fail": 0.2},
              {"id": "e3", "u": "b", "v": "s", "p_fail": 0.3}],
    "metadata": {"name": "tri", "coordinates": {"s": [0, 0], "a": [1, 0]}}
  })");
}

std::string error_of(const json& j) {
  try {
    parse_document(j);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

bool same_network(const Network& a, const Network& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  for (std::size_t i = 0; i < a.node_count(); ++i) {
    const Node &x = a.nodes()[i], &y = b.nodes()[i];
    if (x.id != y.id || x.weight != y.weight || x.is_source != y.is_source) return false;
  }
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    const Edge &x = a.edges()[i], &y = b.edges()[i];
    if (x.id != y.id || x.u != y.u || x.v != y.v || x.p_fail != y.p_fail) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("save and load are inverse on every sample file") {
  std::size_t seen = 0;
  auto tmp = std::filesystem::temp_directory_path() / "saidi_io_roundtrip.json";
  for (const auto& entry : std::filesystem::directory_iterator(SAIDI_DATA_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    CAPTURE(entry.path().string());
    std::ifstream in(entry.path());
    json raw = json::parse(in);
    NetworkDocument doc = load_document(entry.path().string());
    CHECK(to_json(doc) == raw);
    save_document(doc, tmp.string());
    NetworkDocument again = load_document(tmp.string());
    CHECK(same_network(doc.network, again.network));
    CHECK(to_json(again) == to_json(doc));
  }
  CHECK(seen >= 8);
  std::filesystem::remove(tmp);
}

TEST_CASE("unknown fields survive a round trip") {
  json j = small_doc();
  j["owner"] = "utility";
  j["nodes"][1]["load_kw"] = 120;
  j["edges"][2]["tie"] = true;
  j["metadata"]["note"] = {{"k", 1}};
  NetworkDocument doc = parse_document(j);
  CHECK(doc.name == "tri");
  CHECK(doc.coordinates.at("a") == std::pair<double, double>{1, 0});
  CHECK(doc.network.node("a").weight == 2.5);
  CHECK(doc.network.node("b").weight == 1.0);
  json out = to_json(parse_document_text(dump_document(doc)));
  CHECK(out["owner"] == "utility");
  CHECK(out["nodes"][1]["load_kw"] == 120);
  CHECK(out["edges"][2]["tie"] == true);
  CHECK(out["metadata"]["note"]["k"] == 1);
  // Generated networks have no metadata beyond the name.
  json g = to_json(document_from_network(ring(3), "ring3"));
  CHECK(g["metadata"]["name"] == "ring3");
  CHECK(same_network(parse_document(g).network, ring(3)));
}

TEST_CASE("validation errors name the offending field") {
  json j = small_doc();
  j["nodes"][0]["is_source"] = false;
  CHECK(error_of(j).rfind("$.nodes:", 0) == 0);

  j = small_doc();
  j["edges"][1]["p_fail"] = 1.2;
  CHECK(error_of(j).rfind("$.edges[1].p_fail:", 0) == 0);

  j = small_doc();
  j["edges"][0]["v"] = "zz";
  CHECK(error_of(j).rfind("$.edges[0].v:", 0) == 0);

  j = small_doc();
  j["schema_version"] = 2;
  CHECK(error_of(j).rfind("$.schema_version:", 0) == 0);
  j.erase("schema_version");
  CHECK(error_of(j).find("schema_version") != std::string::npos);

  j = small_doc();
  j["nodes"][2]["id"] = "a";
  CHECK(error_of(j).rfind("$.nodes[2].id:", 0) == 0);

  j = small_doc();
  j["nodes"][1]["weight"] = -1;
  CHECK(error_of(j).rfind("$.nodes[1].weight:", 0) == 0);

  j = small_doc();
  j["metadata"]["coordinates"]["q"] = {1, 2};
  CHECK(error_of(j).rfind("$.metadata.coordinates.q:", 0) == 0);

  CHECK_THROWS_AS(parse_document_text("{not json"), ValidationError);
  CHECK_THROWS_AS(load_document("/nonexistent/x.json"), ValidationError);
}

#include "saidi/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace saidi {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "required field is missing");
  return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string() || v.get<std::string>().empty()) fail(path + "." + key, "must be a non-empty string");
  return v.get<std::string>();
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "must be a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

json leftovers(const json& obj, std::initializer_list<const char*> known) {
  json out = json::object();
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool k = false;
    for (const char* name : known) k = k || it.key() == name;
    if (!k) out[it.key()] = it.value();
  }
  return out;
}

}  // namespace

NetworkDocument parse_document(const json& j) {
  if (!j.is_object()) fail("$", "document must be a JSON object");
  const json& version = require(j, "schema_version", "$");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    fail("$.schema_version", "must be " + std::to_string(kSchemaVersion));

  NetworkDocument doc;
  const json& nodes = require(j, "nodes", "$");
  if (!nodes.is_array()) fail("$.nodes", "must be an array");
  std::vector<Node> ns;
  std::set<std::string> node_ids;
  bool has_source = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "$.nodes[" + std::to_string(i) + "]";
    const json& n = nodes[i];
    if (!n.is_object()) fail(path, "must be an object");
    Node node;
    node.id = get_string(n, "id", path);
    if (!node_ids.insert(node.id).second) fail(path + ".id", "duplicate node id " + node.id);
    if (n.contains("weight")) {
      node.weight = get_number(n["weight"], path + ".weight");
      if (node.weight < 0.0) fail(path + ".weight", "must be nonnegative");
    }
    if (n.contains("is_source")) {
      if (!n["is_source"].is_boolean()) fail(path + ".is_source", "must be a boolean");
      node.is_source = n["is_source"].get<bool>();
    }
    has_source = has_source || node.is_source;
    json extra = leftovers(n, {"id", "weight", "is_source"});
    if (!extra.empty()) doc.node_extras[node.id] = extra;
    ns.push_back(node);
  }
  if (!has_source) fail("$.nodes", "at least one node must have is_source = true");

  const json& edges = require(j, "edges", "$");
  if (!edges.is_array()) fail("$.edges", "must be an array");
  std::vector<Edge> es;
  std::set<std::string> edge_ids;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "$.edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_object()) fail(path, "must be an object");
    Edge edge;
    edge.id = get_string(e, "id", path);
    if (!edge_ids.insert(edge.id).second) fail(path + ".id", "duplicate edge id " + edge.id);
    edge.u = get_string(e, "u", path);
    edge.v = get_string(e, "v", path);
    if (!node_ids.count(edge.u)) fail(path + ".u", "unknown node " + edge.u);
    if (!node_ids.count(edge.v)) fail(path + ".v", "unknown node " + edge.v);
    edge.p_fail = get_number(require(e, "p_fail", path), path + ".p_fail");
    if (edge.p_fail < 0.0 || edge.p_fail > 1.0) fail(path + ".p_fail", "must be within [0, 1]");
    json extra = leftovers(e, {"id", "u", "v", "p_fail"});
    if (!extra.empty()) doc.edge_extras[edge.id] = extra;
    es.push_back(edge);
  }

  if (j.contains("metadata")) {
    const json& meta = j["metadata"];
    if (!meta.is_object()) fail("$.metadata", "must be an object");
    if (meta.contains("name")) {
      if (!meta["name"].is_string()) fail("$.metadata.name", "must be a string");
      doc.name = meta["name"].get<std::string>();
    }
    if (meta.contains("coordinates")) {
      const json& coords = meta["coordinates"];
      if (!coords.is_object()) fail("$.metadata.coordinates", "must be an object of id -> [x, y]");
      for (auto it = coords.begin(); it != coords.end(); ++it) {
        const std::string path = "$.metadata.coordinates." + it.key();
        if (!node_ids.count(it.key())) fail(path, "unknown node");
        if (!it->is_array() || it->size() != 2) fail(path, "must be [x, y]");
        doc.coordinates[it.key()] = {get_number((*it)[0], path + "[0]"), get_number((*it)[1], path + "[1]")};
      }
    }
    doc.metadata_extras = leftovers(meta, {"name", "coordinates"});
  }
  doc.extras = leftovers(j, {"schema_version", "nodes", "edges", "metadata"});
  doc.network = Network(std::move(ns), std::move(es));
  return doc;
}

json to_json(const NetworkDocument& doc) {
  json j = json::object();
  j["schema_version"] = kSchemaVersion;
  json nodes = json::array();
  for (const auto& n : doc.network.nodes()) {
    json o = {{"id", n.id}, {"weight", n.weight}, {"is_source", n.is_source}};
    if (auto it = doc.node_extras.find(n.id); it != doc.node_extras.end()) o.update(it->second);
    nodes.push_back(o);
  }
  json edges = json::array();
  for (const auto& e : doc.network.edges()) {
    json o = {{"id", e.id}, {"u", e.u}, {"v", e.v}, {"p_fail", e.p_fail}};
    if (auto it = doc.edge_extras.find(e.id); it != doc.edge_extras.end()) o.update(it->second);
    edges.push_back(o);
  }
  j["nodes"] = nodes;
  j["edges"] = edges;
  json meta = doc.metadata_extras.is_object() ? doc.metadata_extras : json::object();
  if (!doc.name.empty()) meta["name"] = doc.name;
  if (!doc.coordinates.empty()) {
    json coords = json::object();
    for (const auto& [id, xy] : doc.coordinates) coords[id] = {xy.first, xy.second};
    meta["coordinates"] = coords;
  }
  if (!meta.empty()) j["metadata"] = meta;
  for (auto it = doc.extras.begin(); it != doc.extras.end(); ++it) j[it.key()] = it.value();
  return j;
}

NetworkDocument document_from_network(const Network& net, std::string name) {
  NetworkDocument doc;
  doc.network = net;
  doc.name = std::move(name);
  return doc;
}

NetworkDocument parse_document_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("$: invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

std::string dump_document(const NetworkDocument& doc) { return to_json(doc).dump(2) + "\n"; }

NetworkDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document_text(ss.str());
}

void save_document(const NetworkDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << dump_document(doc);
}

Network load(const std::string& path) { return load_document(path).network; }

void save(const Network& net, const std::string& path) { save_document(document_from_network(net), path); }

}  // namespace saidi

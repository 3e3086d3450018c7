#pragma once

#include <map>
#include <string>
#include <utility>

#include "json.hpp"
#include "saidi/network.hpp"

namespace saidi {

inline constexpr int kSchemaVersion = 1;

/// A network plus display metadata. Fields the format does not know are
/// kept verbatim (top level, metadata, and per node/edge) and written back.
struct NetworkDocument {
  Network network;
  std::string name;
  std::map<std::string, std::pair<double, double>, NaturalLess> coordinates;
  nlohmann::json extras = nlohmann::json::object();
  nlohmann::json metadata_extras = nlohmann::json::object();
  std::map<std::string, nlohmann::json> node_extras;
  std::map<std::string, nlohmann::json> edge_extras;
};

/// Throws ValidationError whose message starts with the offending field path.
NetworkDocument parse_document(const nlohmann::json& j);
nlohmann::json to_json(const NetworkDocument& doc);
NetworkDocument document_from_network(const Network& net, std::string name = {});

NetworkDocument parse_document_text(const std::string& text);
std::string dump_document(const NetworkDocument& doc);

NetworkDocument load_document(const std::string& path);
void save_document(const NetworkDocument& doc, const std::string& path);

Network load(const std::string& path);
void save(const Network& net, const std::string& path);

}  // namespace saidi

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "saidi/errors.hpp"

namespace saidi {

struct Node {
  std::string id;
  double weight = 1.0;
  bool is_source = false;
};

struct Edge {
  std::string id;
  std::string u;
  std::string v;
  double p_fail = 0.0;

  double q() const { return 1.0 - p_fail; }
  bool is_self_loop() const { return u == v; }
};

/// Orders ids so that embedded numbers compare numerically ("e2" < "e10").
bool natural_less(std::string_view a, std::string_view b);

struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const { return natural_less(a, b); }
};

/// Weighted multigraph with a source set. Immutable once built; surgeries
/// return new networks.
class Network {
 public:
  Network() = default;
  /// Validates ids, endpoints, weights and probabilities. Throws ValidationError.
  Network(std::vector<Node> nodes, std::vector<Edge> edges);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  /// Non-source node count (n).
  std::size_t consumer_count() const;
  /// Total weight of non-source nodes.
  double total_weight() const;

  bool has_node(std::string_view id) const;
  bool has_edge(std::string_view id) const;
  std::size_t node_index(std::string_view id) const;
  std::size_t edge_index(std::string_view id) const;
  const Node& node(std::string_view id) const { return nodes_[node_index(id)]; }
  const Edge& edge(std::string_view id) const { return edges_[edge_index(id)]; }

  std::vector<std::string> source_ids() const;
  /// Degree counting self-loops twice.
  std::size_t degree(std::string_view id) const;

  /// True when every node is reachable from some source.
  bool is_connected() const;

  /// Copy with every edge failure probability set to p.
  Network with_uniform_p(double p) const;
  /// Copy with one extra edge.
  Network with_edge(const Edge& e) const;
  /// An edge id "e<k>" not used by this network.
  std::string fresh_edge_id(std::string_view prefix = "e") const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> node_pos_;
  std::unordered_map<std::string, std::size_t> edge_pos_;
};

/// Merges all sources into one (the smallest source id survives). Edges
/// between sources are dropped.
Network contract_sources(const Network& net);
/// Merges the endpoints of `edge_id`; the surviving node keeps the id of u.
Network contract_edge(const Network& net, std::string_view edge_id);
Network delete_edge(const Network& net, std::string_view edge_id);

/// Edges whose removal increases the number of connected components, sorted by id.
std::vector<std::string> bridges(const Network& net);
/// Edge connectivity; 0 for disconnected inputs or a single node.
int connectivity(const Network& net);
/// k-edge-connected and every edge cut of size k isolates a single node.
bool is_super_k_connected(const Network& net, int k);

}  // namespace saidi

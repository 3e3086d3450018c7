#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "saidi/graph_core.hpp"
#include "saidi/network.hpp"

namespace saidi {

/// Maximal path of degree-2 nodes between two hubs (u == v for a loop).
struct Chain {
  std::string id;
  std::string u;
  std::string v;
  std::vector<std::string> interior;  // ordered from u to v
  std::vector<std::string> edges;     // ordered from u to v, interior.size() + 1 entries

  std::size_t length() const { return interior.size(); }
  bool is_loop() const { return u == v; }
};

struct StructureOptions {
  /// Accept bridges (they become chains, degree-1 nodes become hubs).
  bool allow_bridges = false;
  /// Nodes to treat as hubs regardless of degree.
  std::vector<std::string> extra_hubs;
};

/// Hubs (source plus nodes of degree != 2) and the chains between them.
/// `network` is the source-contracted input without self-loops or
/// unreachable nodes; all ids refer to it.
class StructureGraph {
 public:
  Network network;
  std::string source;
  std::vector<std::string> hubs;  // source first, then natural order
  std::vector<Chain> chains;

  bool is_hub(std::string_view id) const;
  std::size_t chain_index(std::string_view chain_id) const;
  /// Chain holding the edge.
  std::size_t chain_of_edge(std::string_view edge_id) const;
  /// (chain index, 1-based interior position) of a non-hub node.
  std::pair<std::size_t, std::size_t> position_of(std::string_view node_id) const;

  double chain_fail_prob(std::size_t chain) const;
  double interior_weight(std::size_t chain) const;
  std::vector<double> edge_probs(std::size_t chain) const;
  std::vector<double> interior_weights(std::size_t chain) const;

  /// Hubs with their weights; one edge per chain (id = chain id, p = chain
  /// failure probability). Loop chains appear as self-loops.
  Network hub_network() const;

  void index();

 private:
  std::unordered_map<std::string, std::size_t> chain_pos_;
  std::unordered_map<std::string, std::size_t> edge_chain_;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> node_pos_;
  std::unordered_map<std::string, bool> hub_set_;
};

/// Throws ValidationError on bridged input unless options.allow_bridges.
StructureGraph build_structure(const Network& net, const StructureOptions& options = {});

struct BridgeComponent {
  Network network;          // the block, its attachment node as the single source
  std::string anchor;       // attachment node (the merged source for the root block)
  std::string parent_node;  // node on the source side of the parent bridge
  std::string parent_bridge;
  double subtree_weight = 0.0;              // weight of the block and everything below it
  std::map<std::string, double> absorbed;   // weight added to nodes by child blocks
  double constant = 0.0;                    // constants contributed by child blocks
  double saidi = 0.0;                       // block SAIDI (absorbed weights included) + constant
};

struct BridgeDecomposition {
  std::vector<BridgeComponent> components;  // root block first
  double unreachable_weight = 0.0;
  /// Recombined SAIDI of the whole network.
  double saidi = 0.0;
};

/// Splits at bridges; evaluated at the network's edge probabilities.
BridgeDecomposition bridge_decompose(const Network& net);

struct BoundaryProbs {
  double p0 = 0.0;   // neither hub source-connected
  double p1u = 0.0;  // only u
  double p1v = 0.0;  // only v
  double p2 = 0.0;   // both
};

/// Connection probabilities of a chain's hubs in the structure graph with
/// the chain removed (exact).
BoundaryProbs boundary_connection_probs(const StructureGraph& structure, std::size_t chain);

/// Ring-path formula; bridgeless input (sources are contracted first).
double ring_path_saidi(const Network& net);

/// Law of total probability over the partitions of cut_nodes ∪ {source}.
/// side_edges lists the edges of A_1; every other edge belongs to A_2. The
/// node sets of A_1 and A_2 may only share cut_nodes.
double partition_saidi(const Network& net, const std::vector<std::string>& cut_nodes,
                       const std::vector<std::string>& side_edges);

/// Chain scores on edge probabilities p_0..p_c (edge 0 touches u) and
/// interior weights w_1..w_c.
double chain_path_from_u(const std::vector<double>& p, const std::vector<double>& w);
double chain_path_from_v(const std::vector<double>& p, const std::vector<double>& w);
double chain_ring(const std::vector<double>& p, const std::vector<double>& w);

}  // namespace saidi

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "saidi/network.hpp"

namespace saidi {

class UnionFind {
 public:
  explicit UnionFind(int n = 0) { reset(n); }
  void reset(int n);
  int find(int x);
  bool unite(int a, int b);

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

using EdgeEnds = std::vector<std::pair<int, int>>;

/// Index form of a single-source network used by the engines. Sources are
/// merged into node `source`, self-loops dropped and nodes unreachable from
/// the source removed (their weight is kept in `unreachable_weight`).
struct CompactGraph {
  int source = 0;
  std::vector<double> weight;  // source entry is 0
  EdgeEnds ends;
  std::vector<double> p;
  std::vector<std::string> node_ids;
  std::vector<std::string> edge_ids;
  double unreachable_weight = 0.0;

  int node_count() const { return static_cast<int>(weight.size()); }
  int edge_count() const { return static_cast<int>(ends.size()); }
  double total_weight() const;
};

/// Nodes are ordered with the source first, then by natural id; edges by natural id.
CompactGraph compact(const Network& net);
/// Back to a Network (node 0 is the only source).
Network to_network(const CompactGraph& g);

/// Bridges among the edges with alive[e] != 0 (all edges when alive is empty).
/// Parallel edges are never bridges.
std::vector<int> find_bridges(int n, const EdgeEnds& ends, const std::vector<char>& alive = {});

/// Component label of every node using alive edges; returns the number of components.
int components(int n, const EdgeEnds& ends, const std::vector<char>& alive, std::vector<int>& label);

/// Nodes reachable from `from` through alive edges.
std::vector<char> reachable(int n, const EdgeEnds& ends, const std::vector<char>& alive, int from);

}  // namespace saidi

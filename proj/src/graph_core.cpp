#include "saidi/graph_core.hpp"

#include <algorithm>
#include <numeric>
#include <stack>

namespace saidi {

void UnionFind::reset(int n) {
  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), 0);
  rank_.assign(n, 0);
}

int UnionFind::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

double CompactGraph::total_weight() const {
  double total = 0.0;
  for (int v = 0; v < node_count(); ++v)
    if (v != source) total += weight[v];
  return total;
}

CompactGraph compact(const Network& net) {
  Network single = contract_sources(net);
  const auto& nodes = single.nodes();
  const auto& edges = single.edges();

  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (nodes[a].is_source != nodes[b].is_source) return nodes[a].is_source;
    return natural_less(nodes[a].id, nodes[b].id);
  });
  std::vector<int> full_index(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) full_index[order[i]] = static_cast<int>(i);

  std::vector<std::size_t> eorder;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!edges[e].is_self_loop()) eorder.push_back(e);
  std::sort(eorder.begin(), eorder.end(),
            [&](std::size_t a, std::size_t b) { return natural_less(edges[a].id, edges[b].id); });

  const int n = static_cast<int>(nodes.size());
  EdgeEnds ends;
  for (std::size_t e : eorder)
    ends.emplace_back(full_index[single.node_index(edges[e].u)],
                      full_index[single.node_index(edges[e].v)]);
  auto seen = reachable(n, ends, {}, 0);

  CompactGraph g;
  std::vector<int> new_index(n, -1);
  for (int i = 0; i < n; ++i) {
    const Node& node = nodes[order[i]];
    if (!seen[i]) {
      g.unreachable_weight += node.weight;
      continue;
    }
    new_index[i] = static_cast<int>(g.weight.size());
    g.weight.push_back(node.is_source ? 0.0 : node.weight);
    g.node_ids.push_back(node.id);
  }
  for (std::size_t k = 0; k < eorder.size(); ++k) {
    auto [a, b] = ends[k];
    if (new_index[a] < 0) continue;
    const Edge& e = edges[eorder[k]];
    g.ends.emplace_back(new_index[a], new_index[b]);
    g.p.push_back(e.p_fail);
    g.edge_ids.push_back(e.id);
  }
  return g;
}

Network to_network(const CompactGraph& g) {
  std::vector<Node> nodes;
  for (int v = 0; v < g.node_count(); ++v) nodes.push_back({g.node_ids[v], g.weight[v], v == g.source});
  std::vector<Edge> edges;
  for (int e = 0; e < g.edge_count(); ++e)
    edges.push_back({g.edge_ids[e], g.node_ids[g.ends[e].first], g.node_ids[g.ends[e].second], g.p[e]});
  return Network(std::move(nodes), std::move(edges));
}

std::vector<int> find_bridges(int n, const EdgeEnds& ends, const std::vector<char>& alive) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    if (!alive.empty() && !alive[e]) continue;
    auto [a, b] = ends[e];
    if (a == b) continue;
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> result;
  int timer = 0;
  struct Frame {
    int node;
    int parent_edge;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::stack<Frame> st;
    st.push({root, -1, 0});
    disc[root] = low[root] = timer++;
    while (!st.empty()) {
      Frame& f = st.top();
      if (f.next < adj[f.node].size()) {
        auto [to, e] = adj[f.node][f.next++];
        if (e == f.parent_edge) continue;
        if (disc[to] >= 0) {
          low[f.node] = std::min(low[f.node], disc[to]);
        } else {
          disc[to] = low[to] = timer++;
          st.push({to, e, 0});
        }
      } else {
        Frame done = f;
        st.pop();
        if (!st.empty()) {
          Frame& parent = st.top();
          low[parent.node] = std::min(low[parent.node], low[done.node]);
          if (low[done.node] > disc[parent.node]) result.push_back(done.parent_edge);
        }
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

int components(int n, const EdgeEnds& ends, const std::vector<char>& alive, std::vector<int>& label) {
  UnionFind uf(n);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e)
    if (alive.empty() || alive[e]) uf.unite(ends[e].first, ends[e].second);
  label.assign(n, -1);
  std::vector<int> root_label(n, -1);
  int count = 0;
  for (int v = 0; v < n; ++v) {
    int r = uf.find(v);
    if (root_label[r] < 0) root_label[r] = count++;
    label[v] = root_label[r];
  }
  return count;
}

std::vector<char> reachable(int n, const EdgeEnds& ends, const std::vector<char>& alive, int from) {
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    if (!alive.empty() && !alive[e]) continue;
    adj[ends[e].first].push_back(ends[e].second);
    adj[ends[e].second].push_back(ends[e].first);
  }
  std::vector<char> seen(n, 0);
  if (n == 0) return seen;
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

}  // namespace saidi

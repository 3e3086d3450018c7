#include "saidi/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <queue>

#include "saidi/graph_core.hpp"

namespace saidi {

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t si = i, sj = j;
      while (i < a.size() && digit(a[i])) ++i;
      while (j < b.size() && digit(b[j])) ++j;
      auto na = a.substr(si, i - si);
      auto nb = b.substr(sj, j - sj);
      while (na.size() > 1 && na[0] == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb[0] == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

Network::Network(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id.empty()) throw ValidationError("node with empty id");
    if (!(n.weight >= 0.0) || !std::isfinite(n.weight))
      throw ValidationError("node " + n.id + ": weight must be a finite nonnegative number");
    if (!node_pos_.emplace(n.id, i).second) throw ValidationError("duplicate node id " + n.id);
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.id.empty()) throw ValidationError("edge with empty id");
    if (!edge_pos_.emplace(e.id, i).second) throw ValidationError("duplicate edge id " + e.id);
    if (!node_pos_.count(e.u)) throw ValidationError("edge " + e.id + ": unknown endpoint " + e.u);
    if (!node_pos_.count(e.v)) throw ValidationError("edge " + e.id + ": unknown endpoint " + e.v);
    if (!(e.p_fail >= 0.0 && e.p_fail <= 1.0))
      throw ValidationError("edge " + e.id + ": p_fail must be within [0,1]");
  }
  bool has_source = std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_source; });
  if (!has_source) throw ValidationError("network has no source node");
}

std::size_t Network::consumer_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return !n.is_source; }));
}

double Network::total_weight() const {
  double total = 0.0;
  for (const Node& n : nodes_)
    if (!n.is_source) total += n.weight;
  return total;
}

bool Network::has_node(std::string_view id) const { return node_pos_.count(std::string(id)) > 0; }
bool Network::has_edge(std::string_view id) const { return edge_pos_.count(std::string(id)) > 0; }

std::size_t Network::node_index(std::string_view id) const {
  auto it = node_pos_.find(std::string(id));
  if (it == node_pos_.end()) throw ValidationError("unknown node id " + std::string(id));
  return it->second;
}

std::size_t Network::edge_index(std::string_view id) const {
  auto it = edge_pos_.find(std::string(id));
  if (it == edge_pos_.end()) throw ValidationError("unknown edge id " + std::string(id));
  return it->second;
}

std::vector<std::string> Network::source_ids() const {
  std::vector<std::string> ids;
  for (const Node& n : nodes_)
    if (n.is_source) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end(), NaturalLess{});
  return ids;
}

std::size_t Network::degree(std::string_view id) const {
  std::size_t d = 0;
  for (const Edge& e : edges_) {
    if (e.u == id) ++d;
    if (e.v == id) ++d;
  }
  return d;
}

bool Network::is_connected() const {
  const int n = static_cast<int>(nodes_.size());
  EdgeEnds ends;
  for (const Edge& e : edges_) ends.emplace_back(node_pos_.at(e.u), node_pos_.at(e.v));
  std::vector<int> label;
  components(n, ends, {}, label);
  std::vector<char> has_source(n, 0);
  for (int v = 0; v < n; ++v)
    if (nodes_[v].is_source) has_source[label[v]] = 1;
  for (int v = 0; v < n; ++v)
    if (!has_source[label[v]]) return false;
  return true;
}

Network Network::with_uniform_p(double p) const {
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.p_fail = p;
  return Network(nodes_, std::move(edges));
}

Network Network::with_edge(const Edge& e) const {
  std::vector<Edge> edges = edges_;
  edges.push_back(e);
  return Network(nodes_, std::move(edges));
}

std::string Network::fresh_edge_id(std::string_view prefix) const {
  for (std::size_t k = edges_.size() + 1;; ++k) {
    std::string id = std::string(prefix) + std::to_string(k);
    if (!has_edge(id)) return id;
  }
}

Network contract_sources(const Network& net) {
  auto sources = net.source_ids();
  if (sources.empty()) throw ValidationError("network has no source node");
  if (sources.size() == 1) return net;
  const std::string& keep = sources.front();
  std::vector<Node> nodes;
  for (const Node& n : net.nodes()) {
    if (n.is_source && n.id != keep) continue;
    nodes.push_back(n);
  }
  auto is_src = [&](const std::string& id) { return net.node(id).is_source; };
  std::vector<Edge> edges;
  for (Edge e : net.edges()) {
    bool su = is_src(e.u), sv = is_src(e.v);
    if (su && sv) continue;
    if (su) e.u = keep;
    if (sv) e.v = keep;
    edges.push_back(std::move(e));
  }
  return Network(std::move(nodes), std::move(edges));
}

Network contract_edge(const Network& net, std::string_view edge_id) {
  const Edge& target = net.edge(edge_id);
  const std::string keep = target.u;
  const std::string gone = target.v;
  std::vector<Node> nodes;
  for (const Node& n : net.nodes()) {
    if (n.id == gone && gone != keep) continue;
    Node copy = n;
    if (n.id == keep && gone != keep) {
      const Node& other = net.node(gone);
      copy.weight += other.weight;
      copy.is_source = copy.is_source || other.is_source;
    }
    nodes.push_back(std::move(copy));
  }
  std::vector<Edge> edges;
  for (Edge e : net.edges()) {
    if (e.id == edge_id) continue;
    if (e.u == gone) e.u = keep;
    if (e.v == gone) e.v = keep;
    edges.push_back(std::move(e));
  }
  return Network(std::move(nodes), std::move(edges));
}

Network delete_edge(const Network& net, std::string_view edge_id) {
  net.edge_index(edge_id);
  std::vector<Edge> edges;
  for (const Edge& e : net.edges())
    if (e.id != edge_id) edges.push_back(e);
  return Network(net.nodes(), std::move(edges));
}

namespace {

EdgeEnds index_ends(const Network& net) {
  EdgeEnds ends;
  for (const Edge& e : net.edges())
    ends.emplace_back(static_cast<int>(net.node_index(e.u)), static_cast<int>(net.node_index(e.v)));
  return ends;
}

// Unit-capacity max flow between s and t on an undirected multigraph.
int max_flow(int n, const EdgeEnds& ends, int s, int t, int cap_limit) {
  struct Arc {
    int to, rev, cap;
  };
  std::vector<std::vector<Arc>> g(n);
  for (auto [a, b] : ends) {
    if (a == b) continue;
    g[a].push_back({b, static_cast<int>(g[b].size()), 1});
    g[b].push_back({a, static_cast<int>(g[a].size()) - 1, 1});
  }
  int flow = 0;
  while (flow < cap_limit) {
    std::vector<std::pair<int, int>> prev(n, {-1, -1});
    std::queue<int> q;
    q.push(s);
    prev[s] = {s, -1};
    while (!q.empty() && prev[t].first < 0) {
      int v = q.front();
      q.pop();
      for (int i = 0; i < static_cast<int>(g[v].size()); ++i) {
        const Arc& a = g[v][i];
        if (a.cap > 0 && prev[a.to].first < 0) {
          prev[a.to] = {v, i};
          q.push(a.to);
        }
      }
    }
    if (prev[t].first < 0) break;
    for (int v = t; v != s;) {
      auto [u, i] = prev[v];
      Arc& a = g[u][i];
      a.cap -= 1;
      g[v][a.rev].cap += 1;
      v = u;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

std::vector<std::string> bridges(const Network& net) {
  auto ends = index_ends(net);
  std::vector<std::string> ids;
  for (int e : find_bridges(static_cast<int>(net.node_count()), ends)) ids.push_back(net.edges()[e].id);
  std::sort(ids.begin(), ids.end(), NaturalLess{});
  return ids;
}

int connectivity(const Network& net) {
  const int n = static_cast<int>(net.node_count());
  if (n < 2) return 0;
  auto ends = index_ends(net);
  std::vector<int> label;
  if (components(n, ends, {}, label) > 1) return 0;
  int best = static_cast<int>(ends.size());
  for (int t = 1; t < n; ++t) best = std::min(best, max_flow(n, ends, 0, t, best));
  return best;
}

bool is_super_k_connected(const Network& net, int k) {
  if (k < 1) return false;
  if (connectivity(net) < k) return false;
  const int n = static_cast<int>(net.node_count());
  auto ends = index_ends(net);
  std::vector<int> live;
  for (int e = 0; e < static_cast<int>(ends.size()); ++e)
    if (ends[e].first != ends[e].second) live.push_back(e);
  const int m = static_cast<int>(live.size());
  if (k > m) return true;
  double subsets = 1.0;
  for (int i = 0; i < k; ++i) subsets = subsets * (m - i) / (i + 1);
  if (subsets > 5e6) throw SizeGuardError("is_super_k_connected: too many edge subsets to check");

  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  std::vector<char> alive(ends.size(), 1);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e)
    if (ends[e].first == ends[e].second) alive[e] = 0;
  std::vector<int> label;
  while (true) {
    for (int i : pick) alive[live[i]] = 0;
    int comps = components(n, ends, alive, label);
    if (comps > 1) {
      std::vector<int> size(comps, 0);
      for (int v = 0; v < n; ++v) ++size[label[v]];
      if (*std::min_element(size.begin(), size.end()) != 1) return false;
    }
    for (int i : pick) alive[live[i]] = 1;
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return true;
}

}  // namespace saidi

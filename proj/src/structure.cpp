#include "saidi/structure.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "saidi/detail/chains.hpp"
#include "saidi/detail/engine.hpp"

namespace saidi {

namespace detail {

RawStructure decompose_chains(int n, int source, const EdgeEnds& ends, const std::vector<char>& force_hub) {
  std::vector<std::vector<int>> incident(n);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    incident[ends[e].first].push_back(e);
    incident[ends[e].second].push_back(e);
  }
  RawStructure st;
  st.hub_index.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    bool forced = !force_hub.empty() && force_hub[v];
    if (v == source || incident[v].size() != 2 || forced) {
      st.hub_index[v] = static_cast<int>(st.hubs.size());
      st.hubs.push_back(v);
    }
  }
  if (st.hub_index[source] != 0) {
    // Keep the source as hub 0.
    auto it = std::find(st.hubs.begin(), st.hubs.end(), source);
    st.hubs.erase(it);
    st.hubs.insert(st.hubs.begin(), source);
    for (std::size_t i = 0; i < st.hubs.size(); ++i) st.hub_index[st.hubs[i]] = static_cast<int>(i);
  }
  std::vector<char> used(ends.size(), 0);
  for (int h : st.hubs) {
    for (int e0 : incident[h]) {
      if (used[e0]) continue;
      RawChain chain;
      chain.u = h;
      int prev = h;
      int e = e0;
      while (true) {
        used[e] = 1;
        chain.edges.push_back(e);
        int cur = ends[e].first == prev ? ends[e].second : ends[e].first;
        if (ends[e].first == ends[e].second) cur = prev;
        if (st.hub_index[cur] >= 0) {
          chain.v = cur;
          break;
        }
        chain.interior.push_back(cur);
        int next = incident[cur][0] == e ? incident[cur][1] : incident[cur][0];
        prev = cur;
        e = next;
      }
      st.chains.push_back(std::move(chain));
    }
  }
  return st;
}

HubGraph hub_graph(const RawStructure& st, int source) {
  HubGraph hg;
  hg.n = static_cast<int>(st.hubs.size());
  hg.source = st.hub_index[source];
  hg.edge_of_chain.assign(st.chains.size(), -1);
  for (std::size_t c = 0; c < st.chains.size(); ++c) {
    const RawChain& chain = st.chains[c];
    if (chain.u == chain.v) continue;
    hg.edge_of_chain[c] = static_cast<int>(hg.ends.size());
    hg.ends.emplace_back(st.hub_index[chain.u], st.hub_index[chain.v]);
    hg.chain_of.push_back(static_cast<int>(c));
  }
  return hg;
}

}  // namespace detail

bool StructureGraph::is_hub(std::string_view id) const {
  auto it = hub_set_.find(std::string(id));
  return it != hub_set_.end();
}

std::size_t StructureGraph::chain_index(std::string_view chain_id) const {
  auto it = chain_pos_.find(std::string(chain_id));
  if (it == chain_pos_.end()) throw ValidationError("unknown chain id " + std::string(chain_id));
  return it->second;
}

std::size_t StructureGraph::chain_of_edge(std::string_view edge_id) const {
  auto it = edge_chain_.find(std::string(edge_id));
  if (it == edge_chain_.end()) throw ValidationError("edge " + std::string(edge_id) + " is not in the structure graph");
  return it->second;
}

std::pair<std::size_t, std::size_t> StructureGraph::position_of(std::string_view node_id) const {
  auto it = node_pos_.find(std::string(node_id));
  if (it == node_pos_.end()) throw ValidationError("node " + std::string(node_id) + " is not a chain interior node");
  return it->second;
}

double StructureGraph::chain_fail_prob(std::size_t chain) const {
  double q = 1.0;
  for (const auto& e : chains.at(chain).edges) q *= network.edge(e).q();
  return 1.0 - q;
}

double StructureGraph::interior_weight(std::size_t chain) const {
  double w = 0.0;
  for (const auto& v : chains.at(chain).interior) w += network.node(v).weight;
  return w;
}

std::vector<double> StructureGraph::edge_probs(std::size_t chain) const {
  std::vector<double> p;
  for (const auto& e : chains.at(chain).edges) p.push_back(network.edge(e).p_fail);
  return p;
}

std::vector<double> StructureGraph::interior_weights(std::size_t chain) const {
  std::vector<double> w;
  for (const auto& v : chains.at(chain).interior) w.push_back(network.node(v).weight);
  return w;
}

Network StructureGraph::hub_network() const {
  std::vector<Node> nodes;
  for (const auto& h : hubs) nodes.push_back(network.node(h));
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < chains.size(); ++c)
    edges.push_back({chains[c].id, chains[c].u, chains[c].v, chain_fail_prob(c)});
  return Network(std::move(nodes), std::move(edges));
}

void StructureGraph::index() {
  chain_pos_.clear();
  edge_chain_.clear();
  node_pos_.clear();
  hub_set_.clear();
  for (const auto& h : hubs) hub_set_[h] = true;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    chain_pos_[chains[c].id] = c;
    for (const auto& e : chains[c].edges) edge_chain_[e] = c;
    for (std::size_t i = 0; i < chains[c].interior.size(); ++i) node_pos_[chains[c].interior[i]] = {c, i + 1};
  }
}

StructureGraph build_structure(const Network& net, const StructureOptions& options) {
  CompactGraph g = compact(net);
  if (!options.allow_bridges) {
    auto br = find_bridges(g.node_count(), g.ends);
    if (!br.empty())
      throw ValidationError("build_structure: network has bridges (first: " + g.edge_ids[br.front()] +
                            "); split it with bridge_decompose first");
  }
  std::vector<char> force(g.node_count(), 0);
  for (const auto& id : options.extra_hubs) {
    auto it = std::find(g.node_ids.begin(), g.node_ids.end(), id);
    if (it == g.node_ids.end()) throw ValidationError("build_structure: unknown hub id " + id);
    force[it - g.node_ids.begin()] = 1;
  }
  auto raw = detail::decompose_chains(g.node_count(), g.source, g.ends, force);
  StructureGraph st;
  st.network = to_network(g);
  st.source = g.node_ids[g.source];
  for (int h : raw.hubs) st.hubs.push_back(g.node_ids[h]);
  for (std::size_t c = 0; c < raw.chains.size(); ++c) {
    const auto& rc = raw.chains[c];
    Chain chain;
    chain.id = "c" + std::to_string(c + 1);
    chain.u = g.node_ids[rc.u];
    chain.v = g.node_ids[rc.v];
    for (int v : rc.interior) chain.interior.push_back(g.node_ids[v]);
    for (int e : rc.edges) chain.edges.push_back(g.edge_ids[e]);
    st.chains.push_back(std::move(chain));
  }
  st.index();
  return st;
}

namespace {

double exact_indexed(int n, int source, const EdgeEnds& ends, const std::vector<double>& p,
                     const std::vector<double>& weight) {
  return detail::exact_saidi_generic<double>(n, source, ends, p, weight);
}

}  // namespace

BridgeDecomposition bridge_decompose(const Network& net) {
  CompactGraph g = compact(net);
  const int n = g.node_count();
  auto br = find_bridges(n, g.ends);
  std::vector<char> alive(g.ends.size(), 1), is_bridge(g.ends.size(), 0);
  for (int e : br) alive[e] = 0, is_bridge[e] = 1;
  std::vector<int> block;
  int blocks = components(n, g.ends, alive, block);

  // Bridge tree, rooted at the source block.
  std::vector<std::vector<int>> block_bridges(blocks);
  for (int e : br) {
    block_bridges[block[g.ends[e].first]].push_back(e);
    block_bridges[block[g.ends[e].second]].push_back(e);
  }
  std::vector<int> parent_bridge(blocks, -1), anchor(blocks, -1), parent_node(blocks, -1), order;
  std::vector<char> seen(blocks, 0);
  int root = block[g.source];
  anchor[root] = g.source;
  std::queue<int> q;
  q.push(root);
  seen[root] = 1;
  while (!q.empty()) {
    int b = q.front();
    q.pop();
    order.push_back(b);
    for (int e : block_bridges[b]) {
      int x = g.ends[e].first, y = g.ends[e].second;
      int inside = block[x] == b ? x : y;
      int outside = inside == x ? y : x;
      int child = block[outside];
      if (seen[child]) continue;
      seen[child] = 1;
      parent_bridge[child] = e;
      parent_node[child] = inside;
      anchor[child] = outside;
      q.push(child);
    }
  }

  std::vector<double> weight = g.weight;
  std::vector<double> absorbed(n, 0.0), constant(blocks, 0.0), subtree(blocks, 0.0), saidi(blocks, 0.0);
  std::vector<std::vector<int>> members(blocks);
  for (int v = 0; v < n; ++v) members[block[v]].push_back(v);

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int b = *it;
    std::vector<int> index(n, -1);
    std::vector<double> w;
    for (int v : members[b]) {
      index[v] = static_cast<int>(w.size());
      w.push_back(v == anchor[b] ? 0.0 : weight[v] + absorbed[v]);
      subtree[b] += v == g.source ? 0.0 : weight[v];
    }
    EdgeEnds ends;
    std::vector<double> p;
    for (std::size_t e = 0; e < g.ends.size(); ++e) {
      if (is_bridge[e] || block[g.ends[e].first] != b) continue;
      ends.emplace_back(index[g.ends[e].first], index[g.ends[e].second]);
      p.push_back(g.p[e]);
    }
    saidi[b] = exact_indexed(static_cast<int>(w.size()), index[anchor[b]], ends, p, w) + constant[b];
    if (b == root) continue;
    int e = parent_bridge[b];
    int up = block[parent_node[b]];
    subtree[up] += subtree[b];
    double pe = g.p[e], qe = 1.0 - pe;
    absorbed[parent_node[b]] += qe * (subtree[b] - saidi[b]);
    constant[up] += pe * subtree[b] + qe * saidi[b];
  }
  BridgeDecomposition out;
  out.unreachable_weight = g.unreachable_weight;
  out.saidi = saidi[root] + g.unreachable_weight;
  for (int b : order) {
    BridgeComponent comp;
    std::vector<Node> nodes;
    for (int v : members[b]) {
      Node node{g.node_ids[v], v == anchor[b] ? 0.0 : weight[v] + absorbed[v], v == anchor[b]};
      nodes.push_back(node);
      if (absorbed[v] != 0.0) comp.absorbed[g.node_ids[v]] = absorbed[v];
    }
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < g.ends.size(); ++e)
      if (!is_bridge[e] && block[g.ends[e].first] == b)
        edges.push_back({g.edge_ids[e], g.node_ids[g.ends[e].first], g.node_ids[g.ends[e].second], g.p[e]});
    comp.network = Network(std::move(nodes), std::move(edges));
    comp.anchor = g.node_ids[anchor[b]];
    if (b != root) {
      comp.parent_node = g.node_ids[parent_node[b]];
      comp.parent_bridge = g.edge_ids[parent_bridge[b]];
    }
    comp.subtree_weight = subtree[b];
    comp.constant = constant[b];
    comp.saidi = saidi[b];
    out.components.push_back(std::move(comp));
  }
  return out;
}

BoundaryProbs boundary_connection_probs(const StructureGraph& structure, std::size_t chain) {
  const Chain& target = structure.chains.at(chain);
  std::vector<std::string> hubs = structure.hubs;
  auto hub_pos = [&](const std::string& id) {
    return static_cast<int>(std::find(hubs.begin(), hubs.end(), id) - hubs.begin());
  };
  EdgeEnds ends;
  std::vector<double> p;
  for (std::size_t c = 0; c < structure.chains.size(); ++c) {
    if (c == chain || structure.chains[c].is_loop()) continue;
    ends.emplace_back(hub_pos(structure.chains[c].u), hub_pos(structure.chains[c].v));
    p.push_back(structure.chain_fail_prob(c));
  }
  const int n = static_cast<int>(hubs.size());
  int s = hub_pos(structure.source), u = hub_pos(target.u), v = hub_pos(target.v);
  BoundaryProbs out;
  if (u == v) {
    double p2 = u == s ? 1.0 : detail::all_terminals_connected<double>(n, ends, p, {s, u});
    out.p2 = p2;
    out.p0 = 1.0 - p2;
    return out;
  }
  if (u == s || v == s) {
    double p2 = detail::all_terminals_connected<double>(n, ends, p, {s, u == s ? v : u});
    out.p2 = p2;
    (u == s ? out.p1u : out.p1v) = 1.0 - p2;
    return out;
  }
  auto dist = detail::terminal_partitions<double>(n, ends, p, {s, u, v});
  for (const auto& [code, pr] : dist) {
    auto labels = detail::decode_partition(code, 3);
    bool u_on = labels[1] == 0, v_on = labels[2] == 0;
    if (u_on && v_on) out.p2 += pr;
    else if (u_on) out.p1u += pr;
    else if (v_on) out.p1v += pr;
    else out.p0 += pr;
  }
  return out;
}

double ring_path_saidi(const Network& net) {
  CompactGraph g = compact(net);
  if (!find_bridges(g.node_count(), g.ends).empty())
    throw ValidationError("ring_path_saidi: network has bridges; use bridge_decompose");
  auto st = detail::decompose_chains(g.node_count(), g.source, g.ends);
  return detail::ring_path_generic<double>(st, g.source, g.p, g.weight) + g.unreachable_weight;
}

double partition_saidi(const Network& net, const std::vector<std::string>& cut_nodes,
                       const std::vector<std::string>& side_edges) {
  if (cut_nodes.size() > 4) throw SizeGuardError("partition_saidi: at most 4 cut nodes (Bell-number guard)");
  CompactGraph g = compact(net);
  const int n = g.node_count();
  auto node_of = [&](const std::string& id) {
    auto it = std::find(g.node_ids.begin(), g.node_ids.end(), id);
    if (it == g.node_ids.end()) throw ValidationError("partition_saidi: unknown or unreachable node " + id);
    return static_cast<int>(it - g.node_ids.begin());
  };
  std::vector<char> in_cut(n, 0), side1(g.ends.size(), 0);
  for (const auto& id : cut_nodes) in_cut[node_of(id)] = 1;
  for (const auto& id : side_edges) {
    auto it = std::find(g.edge_ids.begin(), g.edge_ids.end(), id);
    if (it == g.edge_ids.end()) throw ValidationError("partition_saidi: unknown edge " + id);
    side1[it - g.edge_ids.begin()] = 1;
  }
  std::vector<char> touch1(n, 0), touch2(n, 0);
  for (std::size_t e = 0; e < g.ends.size(); ++e) {
    auto& t = side1[e] ? touch1 : touch2;
    t[g.ends[e].first] = t[g.ends[e].second] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (touch1[v] && touch2[v] && !in_cut[v] && v != g.source)
      throw ValidationError("partition_saidi: node " + g.node_ids[v] + " is shared by both sides but not a cut node");

  std::vector<int> terminals{g.source};
  for (int v = 0; v < n; ++v)
    if (in_cut[v] && v != g.source) terminals.push_back(v);

  double total = g.unreachable_weight;
  for (int side = 1; side <= 2; ++side) {
    EdgeEnds own, other;
    std::vector<double> own_p, other_p;
    for (std::size_t e = 0; e < g.ends.size(); ++e) {
      bool mine = (side == 1) == static_cast<bool>(side1[e]);
      (mine ? own : other).push_back(g.ends[e]);
      (mine ? own_p : other_p).push_back(g.p[e]);
    }
    // Weights evaluated on this side: its private nodes, plus the cut nodes on side 1.
    std::vector<double> w(n, 0.0);
    for (int v = 0; v < n; ++v) {
      if (v == g.source) continue;
      bool mine = side == 1 ? (touch1[v] || !touch2[v]) : (touch2[v] && !touch1[v]);
      if (in_cut[v]) mine = side == 1;
      if (mine) w[v] = g.weight[v];
    }
    auto dist = detail::terminal_partitions<double>(n, other, other_p, terminals, 1000);
    for (const auto& [code, pr] : dist) {
      auto labels = detail::decode_partition(code, static_cast<int>(terminals.size()));
      UnionFind uf(n);
      for (std::size_t i = 0; i < terminals.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (labels[i] == labels[j]) uf.unite(terminals[i], terminals[j]);
      std::vector<int> index(n, -1);
      int m = 0;
      for (int v = 0; v < n; ++v)
        if (uf.find(v) == v) index[v] = m++;
      std::vector<double> cw(m, 0.0);
      for (int v = 0; v < n; ++v) cw[index[uf.find(v)]] += w[v];
      EdgeEnds ce;
      for (auto [a, b] : own) ce.emplace_back(index[uf.find(a)], index[uf.find(b)]);
      int src = index[uf.find(g.source)];
      cw[src] = 0.0;
      total += pr * exact_indexed(m, src, ce, own_p, cw);
    }
  }
  return total;
}

double chain_path_from_u(const std::vector<double>& p, const std::vector<double>& w) {
  if (p.size() != w.size() + 1) throw ValidationError("chain scores: need c+1 edge probabilities");
  return detail::score_chain<double>(p, w).path_u;
}

double chain_path_from_v(const std::vector<double>& p, const std::vector<double>& w) {
  if (p.size() != w.size() + 1) throw ValidationError("chain scores: need c+1 edge probabilities");
  return detail::score_chain<double>(p, w).path_v;
}

double chain_ring(const std::vector<double>& p, const std::vector<double>& w) {
  if (p.size() != w.size() + 1) throw ValidationError("chain scores: need c+1 edge probabilities");
  return detail::score_chain<double>(p, w).ring;
}

}  // namespace saidi

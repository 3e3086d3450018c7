#pragma once

#include <vector>

#include "saidi/detail/engine.hpp"
#include "saidi/graph_core.hpp"

namespace saidi::detail {

struct RawChain {
  int u = 0;
  int v = 0;
  std::vector<int> interior;  // ordered from u
  std::vector<int> edges;     // ordered from u
};

struct RawStructure {
  std::vector<int> hubs;       // node indices, ascending (the source is the smallest when it is node 0)
  std::vector<int> hub_index;  // node -> position in hubs, -1 for interior nodes
  std::vector<RawChain> chains;
};

/// Hubs are the source, nodes of degree != 2 and nodes flagged in force_hub.
RawStructure decompose_chains(int n, int source, const EdgeEnds& ends, const std::vector<char>& force_hub = {});

template <class S>
struct ChainScores {
  S fail;    // 1 - Π q
  S path_u;  // Σ_j w_j (1 - Π_{i<=j} q_i)
  S path_v;  // Σ_j w_j (1 - Π_{i>j} q_i)
  S ring;    // Σ_j w_j (1 - Π_{i<=j} q_i)(1 - Π_{i>j} q_i)
  S weight;  // Σ_j w_j
};

template <class S>
ChainScores<S> score_chain(const std::vector<S>& edge_p, const std::vector<double>& interior_w) {
  const std::size_t c = interior_w.size();
  std::vector<S> prefix(c + 2, ScalarOps<S>::one()), suffix(c + 2, ScalarOps<S>::one());
  // prefix[j] = Π_{i<j} q_i over edges 0..j-1; suffix[j] = Π_{i>=j} q_i.
  for (std::size_t i = 0; i <= c; ++i) prefix[i + 1] = prefix[i] * one_minus(edge_p[i]);
  for (std::size_t i = c + 1; i-- > 0;) suffix[i] = suffix[i + 1] * one_minus(edge_p[i]);
  ChainScores<S> out{one_minus(prefix[c + 1]), ScalarOps<S>::zero(), ScalarOps<S>::zero(), ScalarOps<S>::zero(),
                     ScalarOps<S>::zero()};
  for (std::size_t j = 0; j < c; ++j) {
    // Interior node j sits between edge j and edge j + 1.
    S w = ScalarOps<S>::from_weight(interior_w[j]);
    S lost_u = one_minus(prefix[j + 1]);
    S lost_v = one_minus(suffix[j + 1]);
    out.path_u = out.path_u + w * lost_u;
    out.path_v = out.path_v + w * lost_v;
    out.ring = out.ring + w * (lost_u * lost_v);
    out.weight = out.weight + w;
  }
  return out;
}

struct HubGraph {
  int n = 0;
  int source = 0;
  EdgeEnds ends;              // non-loop chains only
  std::vector<int> chain_of;  // hub edge -> chain index
  std::vector<int> edge_of_chain;  // chain -> hub edge or -1
};

HubGraph hub_graph(const RawStructure& st, int source);

/// Exact SAIDI by the ring-path formula on the structure graph.
template <class S>
S ring_path_generic(const RawStructure& st, int source, const std::vector<S>& p, const std::vector<double>& weight) {
  HubGraph hg = hub_graph(st, source);
  const std::size_t nc = st.chains.size();
  std::vector<ChainScores<S>> scores;
  scores.reserve(nc);
  for (const RawChain& chain : st.chains) {
    std::vector<S> ep;
    std::vector<double> iw;
    for (int e : chain.edges) ep.push_back(p[e]);
    for (int v : chain.interior) iw.push_back(weight[v]);
    scores.push_back(score_chain(ep, iw));
  }
  std::vector<S> hub_p;
  for (int c : hg.chain_of) hub_p.push_back(scores[c].fail);
  std::vector<double> hub_w;
  for (int h : st.hubs) hub_w.push_back(h == source ? 0.0 : weight[h]);

  SaidiDC<S> structure_dc(hg.n, hg.source, hg.ends, hub_p, hub_w);
  S total = structure_dc.run();

  for (std::size_t c = 0; c < nc; ++c) {
    const RawChain& chain = st.chains[c];
    if (chain.interior.empty()) continue;
    int hu = st.hub_index[chain.u], hv = st.hub_index[chain.v];
    EdgeEnds ends;
    std::vector<S> ps;
    for (std::size_t e = 0; e < hg.ends.size(); ++e) {
      if (hg.chain_of[e] == static_cast<int>(c)) continue;
      ends.push_back(hg.ends[e]);
      ps.push_back(hub_p[e]);
    }
    const ChainScores<S>& sc = scores[c];
    if (hu == hv) {
      S p2 = hu == hg.source ? ScalarOps<S>::one()
                             : all_terminals_connected<S>(hg.n, ends, ps, {hg.source, hu});
      total = total + sc.weight * one_minus(p2) + sc.ring * p2;
      continue;
    }
    if (hu == hg.source || hv == hg.source) {
      int other = hu == hg.source ? hv : hu;
      S p2 = all_terminals_connected<S>(hg.n, ends, ps, {hg.source, other});
      const S& one_side = hu == hg.source ? sc.path_u : sc.path_v;
      total = total + one_side * one_minus(p2) + sc.ring * p2;
      continue;
    }
    auto dist = terminal_partitions<S>(hg.n, ends, ps, {hg.source, hu, hv});
    S p2 = ScalarOps<S>::zero(), p1u = ScalarOps<S>::zero(), p1v = ScalarOps<S>::zero(), p0 = ScalarOps<S>::zero();
    for (const auto& [code, pr] : dist) {
      auto labels = decode_partition(code, 3);
      bool u_on = labels[1] == 0, v_on = labels[2] == 0;
      if (u_on && v_on) p2 = p2 + pr;
      else if (u_on) p1u = p1u + pr;
      else if (v_on) p1v = p1v + pr;
      else p0 = p0 + pr;
    }
    total = total + sc.weight * p0 + sc.path_u * p1u + sc.path_v * p1v + sc.ring * p2;
  }
  return total;
}

/// SAIDI of an indexed single-source graph: ring-path on the structure graph
/// when it is small enough, plain deletion-contraction otherwise. Self-loops
/// are ignored and nodes unreachable from the source count as lost.
template <class S>
S exact_saidi_generic(int n, int source, const EdgeEnds& ends, const std::vector<S>& p,
                      const std::vector<double>& weight) {
  std::vector<char> alive(ends.size(), 0);
  for (std::size_t e = 0; e < ends.size(); ++e) alive[e] = ends[e].first != ends[e].second;
  auto seen = reachable(n, ends, alive, source);
  std::vector<int> index(n, -1);
  std::vector<double> w;
  double lost = 0.0;
  int m = 0;
  for (int v = 0; v < n; ++v) {
    if (!seen[v]) {
      lost += weight[v];
      continue;
    }
    index[v] = m++;
    w.push_back(v == source ? 0.0 : weight[v]);
  }
  EdgeEnds e2;
  std::vector<S> p2;
  for (std::size_t e = 0; e < ends.size(); ++e) {
    if (!alive[e] || !seen[ends[e].first]) continue;
    e2.emplace_back(index[ends[e].first], index[ends[e].second]);
    p2.push_back(p[e]);
  }
  S base = ScalarOps<S>::from_weight(lost);
  int src = index[source];
  if (e2.size() <= 16) {
    SaidiDC<S> dc(m, src, e2, p2, w);
    return base + dc.run();
  }
  RawStructure st = decompose_chains(m, src, e2);
  if (st.chains.size() <= 48) return base + ring_path_generic<S>(st, src, p2, w);
  if (e2.size() <= 40) {
    SaidiDC<S> dc(m, src, e2, p2, w);
    return base + dc.run();
  }
  throw SizeGuardError("exact SAIDI: structure graph has " + std::to_string(st.chains.size()) +
                       " chains and the network " + std::to_string(e2.size()) +
                       " edges (guards: 48 chains or 40 edges)");
}

}  // namespace saidi::detail

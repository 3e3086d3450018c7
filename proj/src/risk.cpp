#include "saidi/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "saidi/detail/chains.hpp"
#include "saidi/detail/cuts.hpp"
#include "saidi/detail/engine.hpp"
#include "saidi/exact.hpp"
#include "saidi/graph_core.hpp"

namespace saidi {

namespace detail {

std::vector<char> cut_off_side(int n, int source, const EdgeEnds& ends, const std::vector<int>& removed) {
  std::vector<char> alive(ends.size(), 1);
  for (int e : removed) alive[e] = 0;
  auto seen = reachable(n, ends, alive, source);
  std::vector<char> b(n, 0);
  for (int v = 0; v < n; ++v) b[v] = !seen[v];
  return b;
}

namespace {

bool cut_less(const RawCut& a, const RawCut& b) {
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  return a.edges < b.edges;
}

}  // namespace

std::vector<RawCut> min_cuts_upto3(int n, int source, const EdgeEnds& ends, int max_order) {
  if (max_order < 1 || max_order > 3) throw ValidationError("minimal cut sets: max_order must be within 1..3");
  const int m = static_cast<int>(ends.size());
  std::vector<char> alive(m, 1), bridge(m, 0);
  for (int e = 0; e < m; ++e)
    if (ends[e].first == ends[e].second) alive[e] = 0;
  std::vector<RawCut> out;
  for (int e : find_bridges(n, ends, alive)) {
    bridge[e] = 1;
    out.push_back({{e}, cut_off_side(n, source, ends, {e})});
  }
  if (max_order >= 2) {
    std::vector<std::set<int>> partner(m);
    for (int a = 0; a < m; ++a) {
      if (!alive[a] || bridge[a]) continue;
      alive[a] = 0;
      for (int b : find_bridges(n, ends, alive)) {
        if (bridge[b]) continue;
        partner[a].insert(b);
        if (b > a) out.push_back({{a, b}, cut_off_side(n, source, ends, {a, b})});
      }
      alive[a] = 1;
    }
    if (max_order >= 3) {
      for (int a = 0; a < m; ++a) {
        if (!alive[a] || bridge[a]) continue;
        alive[a] = 0;
        for (int b = a + 1; b < m; ++b) {
          if (!alive[b] || bridge[b] || partner[a].count(b)) continue;
          alive[b] = 0;
          for (int c : find_bridges(n, ends, alive)) {
            if (c <= b || bridge[c] || partner[a].count(c) || partner[b].count(c)) continue;
            out.push_back({{a, b, c}, cut_off_side(n, source, ends, {a, b, c})});
          }
          alive[b] = 1;
        }
        alive[a] = 1;
      }
    }
  }
  std::sort(out.begin(), out.end(), cut_less);
  return out;
}

std::vector<RawCut> min_cuts_all(int n, int source, const EdgeEnds& ends) {
  if (n > 22) throw SizeGuardError("all minimal cut sets: at most 22 nodes");
  std::vector<int> others;
  for (int v = 0; v < n; ++v)
    if (v != source) others.push_back(v);
  const int k = static_cast<int>(others.size());
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : ends)
    if (a != b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  auto connected = [&](const std::vector<char>& in) {
    int start = -1, total = 0;
    for (int v = 0; v < n; ++v)
      if (in[v]) {
        ++total;
        if (start < 0) start = v;
      }
    if (total == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == total;
  };
  std::vector<RawCut> out;
  std::vector<char> in_b(n), in_a(n);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::fill(in_b.begin(), in_b.end(), 0);
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1U) in_b[others[i]] = 1;
    for (int v = 0; v < n; ++v) in_a[v] = !in_b[v];
    if (!connected(in_b) || !connected(in_a)) continue;
    RawCut cut;
    for (int e = 0; e < static_cast<int>(ends.size()); ++e)
      if (in_b[ends[e].first] != in_b[ends[e].second]) cut.edges.push_back(e);
    cut.b_side = in_b;
    out.push_back(std::move(cut));
  }
  std::sort(out.begin(), out.end(), cut_less);
  return out;
}

ReachProblem reach_problem(int n, int source, const EdgeEnds& ends, const RawCut& cut) {
  ReachProblem rp;
  std::vector<int> index(n, -1);
  for (int v = 0; v < n; ++v)
    if (!cut.b_side[v]) index[v] = rp.n++;
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    auto [a, b] = ends[e];
    if (cut.b_side[a] || cut.b_side[b] || a == b) continue;
    rp.ends.emplace_back(index[a], index[b]);
    rp.edge_map.push_back(e);
  }
  rp.terminals.push_back(index[source]);
  for (int e : cut.edges) {
    auto [a, b] = ends[e];
    int inside = cut.b_side[a] ? b : a;
    int t = index[inside];
    if (std::find(rp.terminals.begin(), rp.terminals.end(), t) == rp.terminals.end()) rp.terminals.push_back(t);
  }
  return rp;
}

double reach_exact(const ReachProblem& rp, const std::vector<double>& p, std::size_t edge_guard) {
  return all_terminals_connected<double>(rp.n, rp.ends, p, rp.terminals, edge_guard);
}

namespace {

bool separates(const ReachProblem& rp, const std::vector<char>& alive) {
  auto seen = reachable(rp.n, rp.ends, alive, rp.terminals[0]);
  for (int t : rp.terminals)
    if (!seen[t]) return true;
  return false;
}

}  // namespace

std::vector<double> unreach_series(const ReachProblem& rp, const std::vector<double>& p, int r) {
  std::vector<double> out(r + 1, 0.0);
  if (r <= 0 || rp.terminals.size() <= 1) return out;
  const int m = static_cast<int>(rp.ends.size());
  if (r >= 3) {
    std::vector<char> alive(m);
    return subset_series(m, p, r, [&](const std::vector<char>& removed) {
      for (int e = 0; e < m; ++e) alive[e] = !removed[e];
      return separates(rp, alive) ? 1.0 : 0.0;
    });
  }
  std::vector<char> alive(m, 1), bridge(m, 0);
  std::vector<double> sep;
  for (int b : find_bridges(rp.n, rp.ends, alive)) {
    bridge[b] = 1;
    alive[b] = 0;
    if (separates(rp, alive)) sep.push_back(p[b]);
    alive[b] = 1;
  }
  for (double x : sep) out[1] += x;
  if (r >= 2) {
    double e2 = 0.0, prefix = 0.0;
    for (double x : sep) {
      e2 += prefix * x;
      prefix += x;
    }
    double pairs = 0.0;
    for (int a = 0; a < m; ++a) {
      if (bridge[a]) continue;
      alive[a] = 0;
      for (int b : find_bridges(rp.n, rp.ends, alive)) {
        if (b <= a || bridge[b]) continue;
        alive[b] = 0;
        if (separates(rp, alive)) pairs += p[a] * p[b];
        alive[b] = 1;
      }
      alive[a] = 1;
    }
    out[2] = pairs - e2;
  }
  return out;
}

}  // namespace detail

std::string CutSet::key() const {
  std::string k;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) k += "+";
    k += edges[i];
  }
  return k;
}

const char* to_string(RiskKind kind) { return kind == RiskKind::structural ? "structural" : "inter-chain"; }

namespace {

CutSet to_cutset(const CompactGraph& g, const detail::RawCut& cut) {
  CutSet x;
  for (int e : cut.edges) x.edges.push_back(g.edge_ids[e]);
  std::sort(x.edges.begin(), x.edges.end(), NaturalLess{});
  return x;
}

// Edge indices of X in g plus its cut-off side; throws unless X is minimal.
detail::RawCut resolve_cut(const CompactGraph& g, const CutSet& x) {
  detail::RawCut cut;
  for (const auto& id : x.edges) {
    auto it = std::find(g.edge_ids.begin(), g.edge_ids.end(), id);
    if (it == g.edge_ids.end()) throw ValidationError("cut set edge " + id + " is not in the source component");
    cut.edges.push_back(static_cast<int>(it - g.edge_ids.begin()));
  }
  std::sort(cut.edges.begin(), cut.edges.end());
  cut.edges.erase(std::unique(cut.edges.begin(), cut.edges.end()), cut.edges.end());
  if (cut.edges.empty()) throw ValidationError("empty cut set");
  cut.b_side = detail::cut_off_side(g.node_count(), g.source, g.ends, cut.edges);
  std::vector<char> alive(g.ends.size(), 1);
  for (int e : cut.edges) alive[e] = 0;
  std::vector<int> label;
  int comps = components(g.node_count(), g.ends, alive, label);
  bool crossing = std::all_of(cut.edges.begin(), cut.edges.end(), [&](int e) {
    return cut.b_side[g.ends[e].first] != cut.b_side[g.ends[e].second];
  });
  if (comps != 2 || !crossing) throw ValidationError("{" + x.key() + "} is not a minimal cut set");
  return cut;
}

std::vector<std::string> side_nodes(const CompactGraph& g, const std::vector<char>& b) {
  std::vector<std::string> ids;
  for (int v = 0; v < g.node_count(); ++v)
    if (b[v]) ids.push_back(g.node_ids[v]);
  std::sort(ids.begin(), ids.end(), NaturalLess{});
  return ids;
}

RiskRecord ric_indexed(const CompactGraph& g, const detail::RawCut& cut) {
  RiskRecord r;
  r.cutset = to_cutset(g, cut);
  for (int v = 0; v < g.node_count(); ++v)
    if (cut.b_side[v]) r.disconnected_weight += g.weight[v];
  r.fail_prob = 1.0;
  for (int e : cut.edges) r.fail_prob *= g.p[e];
  r.disconnected_nodes = side_nodes(g, cut.b_side);
  auto rp = detail::reach_problem(g.node_count(), g.source, g.ends, cut);
  std::vector<double> lp;
  for (int e : rp.edge_map) lp.push_back(g.p[e]);
  try {
    r.reach_prob = detail::reach_exact(rp, lp, 24);
  } catch (const SizeGuardError&) {
    int order = std::max(0, 3 - static_cast<int>(cut.edges.size()));
    auto u = detail::unreach_series(rp, lp, order);
    r.reach_prob = 1.0 - std::accumulate(u.begin(), u.end(), 0.0);
    r.reach_exact = false;
  }
  r.risk = r.reach_prob * r.fail_prob * r.disconnected_weight;
  return r;
}

}  // namespace

std::vector<CutSet> enumerate_min_cutsets(const Network& net, int max_order) {
  CompactGraph g = compact(net);
  std::vector<CutSet> out;
  for (const auto& cut : detail::min_cuts_upto3(g.node_count(), g.source, g.ends, max_order))
    out.push_back(to_cutset(g, cut));
  return out;
}

std::vector<CutSet> enumerate_all_min_cutsets(const Network& net) {
  CompactGraph g = compact(net);
  std::vector<CutSet> out;
  for (const auto& cut : detail::min_cuts_all(g.node_count(), g.source, g.ends)) out.push_back(to_cutset(g, cut));
  return out;
}

bool is_minimal_cutset(const Network& net, const CutSet& x) {
  try {
    resolve_cut(compact(net), x);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

double reach_probability(const Network& net, const CutSet& x) {
  CompactGraph g = compact(net);
  auto cut = resolve_cut(g, x);
  auto rp = detail::reach_problem(g.node_count(), g.source, g.ends, cut);
  std::vector<double> lp;
  for (int e : rp.edge_map) lp.push_back(g.p[e]);
  return detail::reach_exact(rp, lp, 24);
}

double reach_probability_truncated(const Network& net, const CutSet& x, int r) {
  CompactGraph g = compact(net);
  auto cut = resolve_cut(g, x);
  auto rp = detail::reach_problem(g.node_count(), g.source, g.ends, cut);
  std::vector<double> lp;
  for (int e : rp.edge_map) lp.push_back(g.p[e]);
  auto u = detail::unreach_series(rp, lp, r);
  return 1.0 - std::accumulate(u.begin(), u.end(), 0.0);
}

RiskRecord ric(const Network& net, const CutSet& x) {
  CompactGraph g = compact(net);
  return ric_indexed(g, resolve_cut(g, x));
}

double saidi_via_risks(const Network& net, std::optional<int> max_order) {
  if (max_order) return saidi_korder(net, *max_order);
  CompactGraph g = compact(net);
  double total = g.unreachable_weight;
  for (const auto& cut : detail::min_cuts_all(g.node_count(), g.source, g.ends)) {
    double d = 0.0;
    for (int v = 0; v < g.node_count(); ++v)
      if (cut.b_side[v]) d += g.weight[v];
    double fail = 1.0;
    for (int e : cut.edges) fail *= g.p[e];
    if (d == 0.0 || fail == 0.0) continue;
    auto rp = detail::reach_problem(g.node_count(), g.source, g.ends, cut);
    std::vector<double> lp;
    for (int e : rp.edge_map) lp.push_back(g.p[e]);
    total += detail::reach_exact(rp, lp, 64) * fail * d;
  }
  return total;
}

namespace {

// Hub-level index of a structure graph.
struct HubIndex {
  int n = 0;
  int source = 0;
  EdgeEnds ends;              // per chain (loops included as self-loops)
  std::vector<double> fail;   // per chain

  int hub(const StructureGraph& st, const std::string& id) const {
    return static_cast<int>(std::find(st.hubs.begin(), st.hubs.end(), id) - st.hubs.begin());
  }
};

HubIndex hub_index(const StructureGraph& st) {
  HubIndex h;
  h.n = static_cast<int>(st.hubs.size());
  h.source = 0;
  for (std::size_t c = 0; c < st.chains.size(); ++c) {
    h.ends.emplace_back(h.hub(st, st.chains[c].u), h.hub(st, st.chains[c].v));
    h.fail.push_back(st.chain_fail_prob(c));
  }
  return h;
}

// Interior scores oriented away from the given hub.
detail::ChainScores<double> scores_from(const StructureGraph& st, std::size_t c, bool from_u) {
  auto p = st.edge_probs(c);
  auto w = st.interior_weights(c);
  if (!from_u) {
    std::reverse(p.begin(), p.end());
    std::reverse(w.begin(), w.end());
  }
  return detail::score_chain<double>(p, w);
}

}  // namespace

std::vector<CutSet> enumerate_structural_cutsets(const StructureGraph& structure, int max_order) {
  HubIndex h = hub_index(structure);
  std::vector<detail::RawCut> raw =
      max_order <= 0 ? detail::min_cuts_all(h.n, h.source, h.ends)
                     : detail::min_cuts_upto3(h.n, h.source, h.ends, max_order);
  std::vector<CutSet> out;
  for (const auto& cut : raw) {
    CutSet x;
    for (int c : cut.edges) x.edges.push_back(structure.chains[c].id);
    std::sort(x.edges.begin(), x.edges.end(), NaturalLess{});
    out.push_back(std::move(x));
  }
  return out;
}

RiskRecord structural_risk(const StructureGraph& structure, const std::vector<std::string>& chain_ids, RiskMode mode) {
  HubIndex h = hub_index(structure);
  detail::RawCut cut;
  for (const auto& id : chain_ids) cut.edges.push_back(static_cast<int>(structure.chain_index(id)));
  std::sort(cut.edges.begin(), cut.edges.end());
  cut.b_side = detail::cut_off_side(h.n, h.source, h.ends, cut.edges);
  {
    std::vector<char> alive(h.ends.size(), 1);
    for (int c : cut.edges) alive[c] = 0;
    std::vector<int> label;
    int comps = components(h.n, h.ends, alive, label);
    for (int c : cut.edges)
      if (cut.b_side[h.ends[c].first] == cut.b_side[h.ends[c].second] || comps != 2)
        throw ValidationError("structural_risk: chains do not form a minimal cut set of the structure graph");
  }
  RiskRecord r;
  for (const auto& id : chain_ids) r.cutset.edges.push_back(id);
  std::sort(r.cutset.edges.begin(), r.cutset.edges.end(), NaturalLess{});
  r.chains = r.cutset.edges;
  r.reach_exact = mode == RiskMode::exact;

  double d = 0.0;
  for (int v = 0; v < h.n; ++v)
    if (cut.b_side[v]) {
      d += structure.network.node(structure.hubs[v]).weight;
      r.disconnected_nodes.push_back(structure.hubs[v]);
    }
  for (std::size_t c = 0; c < structure.chains.size(); ++c)
    if (cut.b_side[h.ends[c].first] && cut.b_side[h.ends[c].second]) {
      d += structure.interior_weight(c);
      for (const auto& v : structure.chains[c].interior) r.disconnected_nodes.push_back(v);
    }
  std::sort(r.disconnected_nodes.begin(), r.disconnected_nodes.end(), NaturalLess{});
  r.disconnected_weight = d;

  // Per cut chain: failure probability and path score rooted at its source-side hub.
  std::vector<double> fail, path;
  for (int c : cut.edges) {
    bool from_u = !cut.b_side[h.ends[c].first];
    if (mode == RiskMode::exact) {
      auto sc = scores_from(structure, c, from_u);
      fail.push_back(sc.fail);
      path.push_back(sc.path_u);
    } else {
      auto p = structure.edge_probs(c);
      auto w = structure.interior_weights(c);
      if (!from_u) {
        std::reverse(p.begin(), p.end());
        std::reverse(w.begin(), w.end());
      }
      double first = std::accumulate(p.begin(), p.end(), 0.0);
      double lead = 0.0, prefix = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        prefix += p[j];
        lead += w[j] * prefix;
      }
      fail.push_back(first);
      path.push_back(lead);
    }
  }
  double all_fail = 1.0;
  for (double f : fail) all_fail *= f;
  double bracket = all_fail * d;
  for (std::size_t i = 0; i < fail.size(); ++i) {
    double others = 1.0;
    for (std::size_t j = 0; j < fail.size(); ++j)
      if (j != i) others *= fail[j];
    bracket += others * path[i];
  }
  r.fail_prob = all_fail;
  r.reach_prob = 1.0;
  if (mode == RiskMode::exact) {
    detail::ReachProblem rp;
    std::vector<int> index(h.n, -1);
    for (int v = 0; v < h.n; ++v)
      if (!cut.b_side[v]) index[v] = rp.n++;
    std::vector<double> lp;
    for (std::size_t c = 0; c < h.ends.size(); ++c) {
      auto [a, b] = h.ends[c];
      if (cut.b_side[a] || cut.b_side[b] || a == b) continue;
      rp.ends.emplace_back(index[a], index[b]);
      lp.push_back(h.fail[c]);
    }
    rp.terminals.push_back(index[h.source]);
    for (int c : cut.edges) {
      int inside = cut.b_side[h.ends[c].first] ? h.ends[c].second : h.ends[c].first;
      if (std::find(rp.terminals.begin(), rp.terminals.end(), index[inside]) == rp.terminals.end())
        rp.terminals.push_back(index[inside]);
    }
    r.reach_prob = detail::reach_exact(rp, lp, 64);
  }
  r.risk = r.reach_prob * bracket;
  return r;
}

RiskRecord inter_risk(const StructureGraph& structure, const std::string& chain_id, RiskMode mode,
                      bool bridge_corrected) {
  std::size_t c = structure.chain_index(chain_id);
  const Chain& chain = structure.chains[c];
  RiskRecord r;
  r.kind = RiskKind::inter_chain;
  r.cutset.edges = {chain_id};
  r.chains = {chain_id};
  r.disconnected_nodes = chain.interior;
  r.disconnected_weight = structure.interior_weight(c);
  auto p = structure.edge_probs(c);
  auto w = structure.interior_weights(c);
  if (mode == RiskMode::exact) {
    auto probs = boundary_connection_probs(structure, c);
    r.reach_prob = probs.p2;
    r.risk = probs.p2 * detail::score_chain<double>(p, w).ring;
    r.fail_prob = structure.chain_fail_prob(c);
    return r;
  }
  r.reach_exact = false;
  // Σ_{a<b} p_a p_b · (weight strictly between edges a and b).
  std::vector<double> cum(w.size() + 1, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) cum[i + 1] = cum[i] + w[i];
  double total = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b) total += p[a] * p[b] * (cum[b] - cum[a]);
  if (bridge_corrected) {
    double sum = 0.0;
    const Network& net = structure.network;
    for (const auto& id : bridges(net)) {
      Network cut = delete_edge(net, id);
      CompactGraph g = compact(cut);
      bool lost = std::find(g.node_ids.begin(), g.node_ids.end(), chain.u) == g.node_ids.end();
      if (lost) sum += net.edge(id).p_fail;
    }
    total *= 1.0 - sum;
  }
  r.reach_prob = 1.0;
  r.risk = total;
  return r;
}

double saidi_structural(const Network& net, int max_order, RiskMode mode) {
  StructureGraph st = build_structure(net);
  double total = 0.0;
  for (const auto& x : enumerate_structural_cutsets(st, max_order))
    total += structural_risk(st, x.edges, mode).risk;
  for (const auto& chain : st.chains)
    if (!chain.interior.empty()) total += inter_risk(st, chain.id, mode).risk;
  return total + (net.total_weight() - st.network.total_weight());
}

std::vector<RiskRecord> top_risks(const Network& net, std::size_t count, std::optional<double> p, int max_order) {
  if (count == 0) return {};
  Network target = p ? net.with_uniform_p(*p) : net;
  CompactGraph g = compact(target);
  StructureGraph st = build_structure(target, StructureOptions{true, {}});
  std::vector<RiskRecord> out;
  for (const auto& cut : detail::min_cuts_upto3(g.node_count(), g.source, g.ends, max_order)) {
    RiskRecord r = ric_indexed(g, cut);
    std::set<std::size_t> chains;
    for (const auto& e : r.cutset.edges) chains.insert(st.chain_of_edge(e));
    for (std::size_t c : chains) r.chains.push_back(st.chains[c].id);
    std::sort(r.chains.begin(), r.chains.end(), NaturalLess{});
    r.kind = (r.order() >= 2 && chains.size() == 1) ? RiskKind::inter_chain : RiskKind::structural;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const RiskRecord& a, const RiskRecord& b) {
    if (a.risk != b.risk) return a.risk > b.risk;
    return natural_less(a.cutset.key(), b.cutset.key());
  });
  if (out.size() > count) out.resize(count);
  return out;
}

Rational order2_coefficient(const Network& net) {
  StructureGraph st = build_structure(net);
  Rational total = 0;
  std::vector<std::vector<Rational>> w(st.chains.size());
  for (std::size_t c = 0; c < st.chains.size(); ++c) {
    for (const auto& v : st.chains[c].interior) w[c].push_back(to_rational(st.network.node(v).weight));
    // Pairs of edges a < b inside the chain cut off the nodes between them.
    const std::size_t len = w[c].size();
    for (std::size_t i = 0; i < len; ++i) {
      // node i (0-based) lies between edges i and i+1: (i+1)(len-i) pairs enclose it.
      total += w[c][i] * Rational(static_cast<long>((i + 1) * (len - i)));
    }
  }
  HubIndex h = hub_index(st);
  for (const auto& cut : detail::min_cuts_upto3(h.n, h.source, h.ends, 2)) {
    if (cut.edges.size() != 2) continue;
    Rational d = 0;
    for (int v = 0; v < h.n; ++v)
      if (cut.b_side[v]) d += to_rational(st.network.node(st.hubs[v]).weight);
    for (std::size_t c = 0; c < st.chains.size(); ++c)
      if (cut.b_side[h.ends[c].first] && cut.b_side[h.ends[c].second])
        for (const auto& x : w[c]) d += x;
    // Position sums: failing edge j (counted from the source side) cuts off every node past it.
    Rational s[2];
    long len[2];
    for (int k = 0; k < 2; ++k) {
      int c = cut.edges[k];
      bool from_u = !cut.b_side[h.ends[c].first];
      len[k] = static_cast<long>(w[c].size());
      for (long i = 0; i < len[k]; ++i) {
        long pos = from_u ? i + 1 : len[k] - i;
        s[k] += w[c][i] * Rational(pos);
      }
    }
    total += Rational((len[0] + 1) * (len[1] + 1)) * d + Rational(len[1] + 1) * s[0] + Rational(len[0] + 1) * s[1];
  }
  return total;
}

}  // namespace saidi

#include "saidi/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "saidi/detail/chains.hpp"
#include "saidi/detail/engine.hpp"
#include "saidi/exact.hpp"
#include "saidi/graph_core.hpp"

namespace saidi {

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::chain_to_chain: return "chain-to-chain";
    case EdgeKind::inter_chain: return "inter-chain";
    case EdgeKind::hub_to_chain: return "hub-to-chain";
    case EdgeKind::hub_to_hub: return "hub-to-hub";
  }
  return "?";
}

namespace {

Edge as_edge(const Network& net, const CandidateEdge& e) {
  if (!net.has_node(e.u)) throw ValidationError("candidate edge: unknown node " + e.u);
  if (!net.has_node(e.v)) throw ValidationError("candidate edge: unknown node " + e.v);
  if (e.u == e.v) throw ValidationError("candidate edge: endpoints must differ");
  if (!(e.p_fail >= 0.0 && e.p_fail <= 1.0)) throw ValidationError("candidate edge: p_fail must be within [0, 1]");
  if (!(e.cost >= 0.0)) throw ValidationError("candidate edge: cost must be nonnegative");
  std::string id = e.id.empty() || net.has_edge(e.id) ? net.fresh_edge_id() : e.id;
  return {id, e.u, e.v, e.p_fail};
}

// Position of a node in the structure: chain index and 1-based position, or
// no chain for hubs (and for nodes outside the source component).
struct Role {
  bool hub = true;
  std::size_t chain = 0;
  std::size_t pos = 0;
};

Role role_of(const Network& net, const StructureGraph& st, const std::string& id) {
  Role r;
  if (net.node(id).is_source || !st.network.has_node(id) || st.is_hub(id)) return r;
  auto [c, pos] = st.position_of(id);
  r.hub = false;
  r.chain = c;
  r.pos = pos;
  return r;
}

double risk_of(const Network& net, const CutSet& x, RiskMode mode) {
  RiskRecord r = ric(net, x);
  if (mode == RiskMode::exact) return r.risk;
  int order = std::max(0, 3 - static_cast<int>(x.order()));
  return reach_probability_truncated(net, x, order) * r.fail_prob * r.disconnected_weight;
}

double risk_or_zero(const Network& net, const CutSet& x, RiskMode mode) {
  if (!is_minimal_cutset(net, x)) return 0.0;
  return risk_of(net, x, mode);
}

// Pr(all the given nodes are connected to the source).
double joint_connected(const Network& net, const std::vector<std::string>& ids) {
  CompactGraph g = compact(net);
  std::vector<int> terms{g.source};
  for (const auto& id : ids) {
    if (net.node(id).is_source) continue;
    auto it = std::find(g.node_ids.begin(), g.node_ids.end(), id);
    if (it == g.node_ids.end()) return 0.0;
    terms.push_back(static_cast<int>(it - g.node_ids.begin()));
  }
  return detail::all_terminals_connected<double>(g.node_count(), g.ends, g.p, terms);
}

template <class T>
T ring2_of(const std::vector<T>& w) {
  T total = 0;
  const long c = static_cast<long>(w.size());
  for (long k = 1; k <= c; ++k) total += w[k - 1] * T(k * (c + 1 - k));
  return total;
}

template <class T>
std::vector<T> slice(const std::vector<T>& w, long from, long to) {  // 1-based, inclusive
  std::vector<T> out;
  for (long k = std::max(1L, from); k <= std::min<long>(to, static_cast<long>(w.size())); ++k) out.push_back(w[k - 1]);
  return out;
}

template <class T>
T chain_split_delta(const std::vector<T>& w, long i) {
  const long c = static_cast<long>(w.size());
  if (i <= 0 || i > c) return T(0);
  return ring2_of(w) - ring2_of(slice(w, 1, i - 1)) - ring2_of(slice(w, i + 1, c));
}

template <class T>
T inter_chain_delta(const std::vector<T>& w, long i, long j) {
  const long c = static_cast<long>(w.size());
  if (i > j) std::swap(i, j);
  if (i < 0 || j > c + 1) throw ValidationError("inter-chain delta: positions must be within 0..c+1");
  if (i == j) return T(0);
  std::vector<T> merged = slice(w, 1, i - 1);
  if (i >= 1 && j <= c) merged.push_back(w[i - 1] + w[j - 1]);
  for (auto x : slice(w, j + 1, c)) merged.push_back(x);
  if (i == 0 && j == c + 1) merged.clear();
  std::vector<T> loop = slice(w, i + 1, j - 1);
  T loop_w = 0;
  for (auto x : loop) loop_w += x;
  return ring2_of(w) - ring2_of(merged) - ring2_of(loop) - T(i * (c + 1 - j)) * loop_w;
}

std::vector<Rational> unit_weights(long c) { return std::vector<Rational>(c, Rational(1)); }

}  // namespace

EdgeKind classify_candidate(const Network& net, const CandidateEdge& e) {
  as_edge(net, e);
  StructureGraph st = build_structure(net, StructureOptions{true, {}});
  Role a = role_of(net, st, e.u), b = role_of(net, st, e.v);
  if (a.hub && b.hub) return EdgeKind::hub_to_hub;
  if (a.hub || b.hub) return EdgeKind::hub_to_chain;
  return a.chain == b.chain ? EdgeKind::inter_chain : EdgeKind::chain_to_chain;
}

double risk_difference(const Network& net, const CutSet& x, const CandidateEdge& e, RiskMode mode) {
  Edge edge = as_edge(net, e);
  double before = risk_of(net, x, mode);
  Network contracted = contract_edge(net.with_edge(edge), edge.id);
  return edge.q() * (before - risk_or_zero(contracted, x, mode));
}

double risk_difference_direct(const Network& net, const CutSet& x, const CandidateEdge& e) {
  Edge edge = as_edge(net, e);
  RiskRecord r = ric(net, x);
  auto off = [&](const std::string& id) {
    return std::binary_search(r.disconnected_nodes.begin(), r.disconnected_nodes.end(), id, NaturalLess{});
  };
  Network bigger = net.with_edge(edge);
  CutSet y = x;
  if (off(edge.u) != off(edge.v)) {
    y.edges.push_back(edge.id);
    std::sort(y.edges.begin(), y.edges.end(), NaturalLess{});
  }
  return r.risk - ric(bigger, y).risk;
}

double ring2(const std::vector<double>& weights) { return ring2_of(weights); }

Rational inter_delta_chain_to_chain_equal(long c, long i) {
  if (i < 0 || i > c) throw ValidationError("chain-to-chain delta: split must be within 0..c");
  return ring2_equal(c) - ring2_equal(i) - ring2_equal(c - i);
}

Rational inter_delta_inter_chain_equal(long c, long i, long j) { return inter_chain_delta(unit_weights(c), i, j); }

std::vector<ChainDelta> inter_risk_delta_chain_to_chain(const StructureGraph& structure, const std::string& chain1,
                                                        std::size_t i1, const std::string& chain2, std::size_t i2,
                                                        RiskMode mode, double q_e) {
  const std::size_t c1 = structure.chain_index(chain1), c2 = structure.chain_index(chain2);
  if (c1 == c2) throw ValidationError("chain-to-chain delta: chains must differ");
  auto node_at = [&](std::size_t c, std::size_t pos) {
    const Chain& ch = structure.chains[c];
    if (pos == 0) return ch.u;
    if (pos == ch.length() + 1) return ch.v;
    if (pos > ch.length() + 1) throw ValidationError("chain-to-chain delta: position outside chain " + ch.id);
    return ch.interior[pos - 1];
  };
  std::vector<ChainDelta> out;
  const std::size_t chains[2] = {c1, c2};
  const std::size_t pos[2] = {i1, i2};
  for (int k = 0; k < 2; ++k) {
    std::size_t c = chains[k];
    const Chain& ch = structure.chains[c];
    auto w = structure.interior_weights(c);
    ChainDelta d{ch.id, 0.0};
    const long i = static_cast<long>(pos[k]);
    node_at(c, pos[k]);
    if (i >= 1 && i <= static_cast<long>(ch.length())) {
      if (mode == RiskMode::approx) {
        d.value = chain_split_delta(w, i);
      } else {
        auto p = structure.edge_probs(c);
        std::vector<double> p1(p.begin(), p.begin() + i), p2(p.begin() + i, p.end());
        double split = chain_ring(p, w) - chain_ring(p1, slice(w, 1, i - 1)) - chain_ring(p2, slice(w, i + 1, w.size()));
        Network rest = structure.network;
        for (const auto& e : ch.edges) rest = delete_edge(rest, e);
        double pr = joint_connected(rest, {ch.u, ch.v, node_at(chains[1 - k], pos[1 - k])});
        d.value = q_e * pr * split;
      }
    }
    out.push_back(d);
  }
  return out;
}

double inter_risk_delta_inter_chain(const StructureGraph& structure, const std::string& chain, std::size_t i,
                                    std::size_t j) {
  std::size_t c = structure.chain_index(chain);
  return inter_chain_delta(structure.interior_weights(c), static_cast<long>(i), static_cast<long>(j));
}

namespace {

// Minimal cut sets of S(G') made of chains whose edges all lie in `edges`.
std::vector<std::vector<std::string>> image_cutsets(const StructureGraph& st, const std::set<std::string>& edges) {
  std::vector<std::size_t> pool;
  for (std::size_t c = 0; c < st.chains.size(); ++c) {
    if (st.chains[c].is_loop()) continue;
    bool inside = std::all_of(st.chains[c].edges.begin(), st.chains[c].edges.end(),
                              [&](const std::string& e) { return edges.count(e) > 0; });
    if (inside) pool.push_back(c);
  }
  if (pool.size() > 16) throw SizeGuardError("structural delta: too many chains to combine");
  const int n = static_cast<int>(st.hubs.size());
  auto hub = [&](const std::string& id) {
    return static_cast<int>(std::find(st.hubs.begin(), st.hubs.end(), id) - st.hubs.begin());
  };
  EdgeEnds ends;
  for (const auto& ch : st.chains) ends.emplace_back(hub(ch.u), hub(ch.v));
  std::vector<std::vector<std::string>> out;
  std::vector<int> label;
  for (std::uint32_t mask = 1; mask < (1U << pool.size()); ++mask) {
    std::vector<char> alive(ends.size(), 1);
    for (std::size_t b = 0; b < pool.size(); ++b)
      if ((mask >> b) & 1U) alive[pool[b]] = 0;
    if (components(n, ends, alive, label) != 2) continue;
    bool crossing = true;
    std::vector<std::string> ids;
    for (std::size_t b = 0; b < pool.size(); ++b)
      if ((mask >> b) & 1U) {
        auto [a, z] = ends[pool[b]];
        crossing = crossing && label[a] != label[z];
        ids.push_back(st.chains[pool[b]].id);
      }
    if (crossing) out.push_back(ids);
  }
  return out;
}

}  // namespace

double structural_risk_delta(const Network& net, const std::vector<std::string>& chain_ids, const CandidateEdge& e,
                             FactorVariant variant) {
  Edge edge = as_edge(net, e);
  StructureGraph st = build_structure(net);
  RiskRecord before = structural_risk(st, chain_ids, RiskMode::exact);
  std::set<std::string> edges;
  for (const auto& id : chain_ids)
    for (const auto& x : st.chains[st.chain_index(id)].edges) edges.insert(x);

  Network contracted = contract_edge(net.with_edge(edge), edge.id);
  StructureGraph st2 = build_structure(contracted);
  std::vector<RiskRecord> images;
  for (const auto& ids : image_cutsets(st2, edges)) images.push_back(structural_risk(st2, ids, RiskMode::exact));
  double after = 0.0;
  for (const auto& r : images) after += r.risk;

  EdgeKind kind = classify_candidate(net, e);
  if (variant == FactorVariant::derived || kind != EdgeKind::chain_to_chain) return edge.q() * (before.risk - after);

  // Chain-to-chain within X: X becomes X1 (merged node v_e cut off with B)
  // and X2 (v_e on the source side). Other images keep their own risk.
  const std::string& ve = edge.u;
  auto b_hubs = [](const StructureGraph& g, const RiskRecord& r) {
    std::set<std::string> out;
    for (const auto& id : r.disconnected_nodes)
      if (g.is_hub(id)) out.insert(id);
    return out;
  };
  std::set<std::string> hb = b_hubs(st, before), hb1 = hb;
  hb1.insert(ve);
  const RiskRecord *x1 = nullptr, *x2 = nullptr;
  double rest = 0.0;
  for (const auto& r : images) {
    auto h = b_hubs(st2, r);
    if (!x1 && h == hb1) {
      x1 = &r;
    } else if (!x2 && h == hb) {
      x2 = &r;
    } else {
      rest += r.risk;
    }
  }
  if (!x1 || !x2) return edge.q() * (before.risk - after);
  const std::size_t own = st.position_of(edge.u).first;
  const std::size_t other = st.position_of(edge.v).first;
  auto fail_from = [&](const RiskRecord& r, std::size_t original) {
    for (const auto& id : r.cutset.edges) {
      const Chain& ch = st2.chains[st2.chain_index(id)];
      if (st.chain_of_edge(ch.edges.front()) == original) return st2.chain_fail_prob(st2.chain_index(id));
    }
    return 0.0;
  };
  double p11 = fail_from(*x1, own), p12 = fail_from(*x2, own), p21 = fail_from(*x1, other);
  double factor = variant == FactorVariant::printed ? 1.0 - p11 * p12 : 1.0 - p11 * p21;
  double rho2 = x2->reach_prob > 0.0 ? x2->risk / x2->reach_prob : 0.0;
  after = x1->risk + before.reach_prob * factor * rho2 + rest;
  return edge.q() * (before.risk - after);
}

RiskDelta evaluate_candidate(const Network& net, const CandidateEdge& e, std::optional<double> p, RiskMode mode) {
  Network base = p ? net.with_uniform_p(*p) : net;
  Edge edge = as_edge(base, e);
  RiskDelta d;
  d.edge = e;
  d.edge.id = edge.id;
  d.kind = classify_candidate(base, e);
  d.exact = mode == RiskMode::exact;
  Network bigger = base.with_edge(edge);
  if (mode == RiskMode::exact) {
    d.saidi_before = saidi_exact(base);
    d.saidi_after = saidi_exact(bigger);
  } else {
    d.saidi_before = saidi_korder(base, 3);
    d.saidi_after = saidi_korder(bigger, 3);
  }
  d.total = d.saidi_before - d.saidi_after;

  CandidateEdge ce = e;
  ce.id = edge.id;
  for (const auto& x : enumerate_min_cutsets(base, 3)) {
    double v = risk_difference(base, x, ce, mode);
    if (v != 0.0) d.cut_deltas.emplace_back(x, v);
  }

  StructureGraph st = build_structure(base, StructureOptions{true, {}});
  Role a = role_of(base, st, e.u), b = role_of(base, st, e.v);
  if (!a.hub && !b.hub && a.chain != b.chain) {
    d.inter_deltas = inter_risk_delta_chain_to_chain(st, st.chains[a.chain].id, a.pos, st.chains[b.chain].id, b.pos);
  } else if (!a.hub || !b.hub) {
    const Role& on = a.hub ? b : a;
    const std::string& hub = a.hub ? e.u : e.v;
    const Chain& ch = st.chains[on.chain];
    if (!a.hub && !b.hub) {
      d.inter_deltas.push_back({ch.id, inter_risk_delta_inter_chain(st, ch.id, a.pos, b.pos)});
    } else if (hub == ch.u || hub == ch.v) {
      std::size_t end = hub == ch.u ? 0 : ch.length() + 1;
      d.inter_deltas.push_back({ch.id, inter_risk_delta_inter_chain(st, ch.id, end, on.pos)});
    } else {
      d.inter_deltas.push_back({ch.id, chain_split_delta(st.interior_weights(on.chain), static_cast<long>(on.pos))});
    }
  }

  if (e.cost > 0.0) {
    d.effectiveness = d.total / e.cost;
  } else if (d.total > 0.0) {
    d.effectiveness = std::numeric_limits<double>::infinity();
    d.infinite_effectiveness = true;
  }
  return d;
}

std::vector<RiskDelta> rank_candidates(const Network& net, const std::vector<CandidateEdge>& candidates,
                                       std::optional<double> p, RiskMode mode) {
  std::vector<RiskDelta> out;
  for (const auto& c : candidates) out.push_back(evaluate_candidate(net, c, p, mode));
  std::stable_sort(out.begin(), out.end(), [](const RiskDelta& a, const RiskDelta& b) {
    if (a.total != b.total) return a.total > b.total;
    return natural_less(a.edge.id, b.edge.id);
  });
  return out;
}

std::vector<PlanStep> suggest_edges(const Network& net, const std::vector<CandidateEdge>& candidates, double budget,
                                    std::optional<double> p, RiskMode mode) {
  std::vector<PlanStep> plan;
  Network current = p ? net.with_uniform_p(*p) : net;
  std::vector<CandidateEdge> left = candidates;
  std::sort(left.begin(), left.end(), [](const auto& a, const auto& b) { return natural_less(a.id, b.id); });
  double spent = 0.0;
  const double slack = 1e-12 * std::max(1.0, std::abs(budget));
  while (!left.empty()) {
    std::optional<std::size_t> best;
    RiskDelta best_delta;
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left[i].cost > budget - spent + slack) continue;
      RiskDelta d = evaluate_candidate(current, left[i], std::nullopt, mode);
      if (!(d.total > 0.0)) continue;
      bool better = !best;
      if (best) {
        double a = d.effectiveness, b = best_delta.effectiveness;
        bool tie = a == b || std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
        better = !tie && a > b;
      }
      if (better) {
        best = i;
        best_delta = std::move(d);
      }
    }
    if (!best) break;
    spent += left[*best].cost;
    CandidateEdge chosen = left[*best];
    chosen.id = best_delta.edge.id;
    current = current.with_edge({chosen.id, chosen.u, chosen.v, chosen.p_fail});
    best_delta.edge = chosen;
    plan.push_back({best_delta, spent});
    left.erase(left.begin() + static_cast<long>(*best));
  }
  return plan;
}

namespace {

void check_grid(int rows, int cols, const std::vector<int>& edges_per_gap) {
  if (rows < 2 || cols < 2) throw ValidationError("grid: rows and cols must be at least 2");
  if (static_cast<int>(edges_per_gap.size()) != cols - 1)
    throw ValidationError("grid: edges_per_gap needs one entry per gap (cols - 1)");
  for (int k : edges_per_gap) {
    if (k < 0) throw ValidationError("grid: negative edge count");
    if (k > rows - 2) throw ValidationError("grid: " + std::to_string(k) + " edges do not fit in a gap of " +
                                            std::to_string(rows - 2) + " interior rows");
  }
}

long long c3(long long x) { return x < 3 ? 0 : x * (x - 1) * (x - 2) / 6; }

// Score of column j given the edge rows of the gaps on its left and right.
long long column_score(int rows, int cols, int j, const std::vector<int>& left, const std::vector<int>& right) {
  std::vector<int> hubs;
  hubs.push_back(j == cols - 1 ? -1 : 0);
  hubs.insert(hubs.end(), left.begin(), left.end());
  hubs.insert(hubs.end(), right.begin(), right.end());
  hubs.push_back(j == 0 ? rows : rows - 1);
  std::sort(hubs.begin(), hubs.end());
  hubs.erase(std::unique(hubs.begin(), hubs.end()), hubs.end());
  long long s = 0;
  for (std::size_t k = 1; k < hubs.size(); ++k) s += c3(hubs[k] - hubs[k - 1] + 1);
  return s;
}

void subsets_upto(int lo, int hi, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == k) return;
  for (int r = cur.empty() ? lo : cur.back() + 1; r <= hi; ++r) {
    cur.push_back(r);
    subsets_upto(lo, hi, k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> gap_states(int rows, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_upto(1, rows - 2, k, cur, out);
  return out;
}

}  // namespace

long long grid_score(int rows, int cols, const GridPlacement& placement) {
  check_grid(rows, cols, std::vector<int>(cols - 1, 0));
  if (static_cast<int>(placement.size()) != cols - 1) throw ValidationError("grid: placement needs cols - 1 gaps");
  for (const auto& gap : placement)
    for (int r : gap)
      if (r < 1 || r > rows - 2) throw ValidationError("grid: placement row outside 1..rows-2");
  const std::vector<int> none;
  long long s = 0;
  for (int j = 0; j < cols; ++j) {
    std::vector<int> left = j > 0 ? placement[j - 1] : none;
    std::vector<int> right = j < cols - 1 ? placement[j] : none;
    s += column_score(rows, cols, j, left, right);
  }
  return s;
}

GridPlan grid_dp(int rows, int cols, const std::vector<int>& edges_per_gap) {
  check_grid(rows, cols, edges_per_gap);
  const std::vector<int> none;
  const int gaps = cols - 1;
  std::vector<std::vector<std::vector<int>>> states(gaps);
  for (int g = 0; g < gaps; ++g) states[g] = gap_states(rows, edges_per_gap[g]);
  // cost[g][s]: best score of columns 0..g with gap g in state s; from[g][s]: argmin of gap g-1.
  std::vector<std::vector<long long>> cost(gaps);
  std::vector<std::vector<std::size_t>> from(gaps);
  for (std::size_t s = 0; s < states[0].size(); ++s) cost[0].push_back(column_score(rows, cols, 0, none, states[0][s]));
  from[0].assign(states[0].size(), 0);
  for (int g = 1; g < gaps; ++g) {
    cost[g].assign(states[g].size(), std::numeric_limits<long long>::max());
    from[g].assign(states[g].size(), 0);
    for (std::size_t s = 0; s < states[g].size(); ++s)
      for (std::size_t t = 0; t < states[g - 1].size(); ++t) {
        long long v = cost[g - 1][t] + column_score(rows, cols, g, states[g - 1][t], states[g][s]);
        if (v < cost[g][s]) {
          cost[g][s] = v;
          from[g][s] = t;
        }
      }
  }
  long long best = std::numeric_limits<long long>::max();
  std::size_t arg = 0;
  for (std::size_t s = 0; s < states[gaps - 1].size(); ++s) {
    long long v = cost[gaps - 1][s] + column_score(rows, cols, cols - 1, states[gaps - 1][s], none);
    if (v < best) {
      best = v;
      arg = s;
    }
  }
  GridPlan plan;
  plan.score = best;
  plan.placement.assign(gaps, {});
  for (int g = gaps - 1; g >= 0; --g) {
    plan.placement[g] = states[g][arg];
    arg = from[g][arg];
  }
  return plan;
}

GridPlan grid_exhaustive(int rows, int cols, const std::vector<int>& edges_per_gap) {
  check_grid(rows, cols, edges_per_gap);
  const int gaps = cols - 1;
  std::vector<std::vector<std::vector<int>>> states(gaps);
  double total = 1.0;
  for (int g = 0; g < gaps; ++g) {
    states[g] = gap_states(rows, edges_per_gap[g]);
    total *= static_cast<double>(states[g].size());
  }
  if (total > 5e7) throw SizeGuardError("grid_exhaustive: too many placements");
  GridPlan best;
  best.score = std::numeric_limits<long long>::max();
  std::vector<std::size_t> idx(gaps, 0);
  GridPlacement cur(gaps);
  while (true) {
    for (int g = 0; g < gaps; ++g) cur[g] = states[g][idx[g]];
    long long s = grid_score(rows, cols, cur);
    if (s < best.score) {
      best.score = s;
      best.placement = cur;
    }
    int g = gaps - 1;
    while (g >= 0 && ++idx[g] == states[g].size()) idx[g--] = 0;
    if (g < 0) break;
  }
  return best;
}

AuditReport design_rule_audit(const Network& net) {
  AuditReport rep;
  rep.bridges = bridges(net);
  StructureGraph st = build_structure(net, StructureOptions{true, {}});
  std::map<std::string, int> degree;
  for (const auto& h : st.hubs) degree[h] = 0;
  for (const auto& ch : st.chains) {
    ++degree[ch.u];
    ++degree[ch.v];
  }
  for (const auto& [h, d] : degree) ++rep.hub_degree_histogram[d];
  rep.hub_count = st.hubs.size();
  rep.chain_count = st.chains.size();
  rep.three_regular = rep.hub_degree_histogram.size() == 1 && rep.hub_degree_histogram.count(3) == 1;
  Network hubs = st.hub_network();
  rep.three_connected = connectivity(hubs) >= 3;
  bool super_checked = true;
  try {
    rep.super_three_connected = is_super_k_connected(hubs, 3);
  } catch (const SizeGuardError&) {
    super_checked = false;
  }
  if (!st.chains.empty()) {
    rep.chain_length_min = std::numeric_limits<std::size_t>::max();
    for (const auto& ch : st.chains) {
      rep.chain_length_min = std::min(rep.chain_length_min, ch.length());
      rep.chain_length_max = std::max(rep.chain_length_max, ch.length());
    }
    rep.chain_length_spread = rep.chain_length_max - rep.chain_length_min;
  }
  if (!rep.bridges.empty())
    rep.violations.push_back({"bridgeless", std::to_string(rep.bridges.size()) + " bridge(s), first " + rep.bridges[0]});
  if (!rep.three_regular) {
    std::string hist;
    for (const auto& [d, n] : rep.hub_degree_histogram) hist += (hist.empty() ? "" : ", ") + std::to_string(n) + " hub(s) of degree " + std::to_string(d);
    rep.violations.push_back({"3-regular structure graph", hist});
  }
  if (!rep.three_connected)
    rep.violations.push_back({"3-connected structure graph", "edge connectivity " + std::to_string(connectivity(hubs))});
  if (!super_checked)
    rep.violations.push_back({"super 3-connected structure graph", "not checked: too many 3-edge subsets"});
  else if (!rep.super_three_connected)
    rep.violations.push_back({"super 3-connected structure graph", "some 3-edge cut isolates more than one hub"});
  if (rep.chain_length_spread > 1)
    rep.violations.push_back({"equal chain lengths", "lengths range from " + std::to_string(rep.chain_length_min) +
                                                          " to " + std::to_string(rep.chain_length_max)});
  return rep;
}

}  // namespace saidi

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saidi/network.hpp"
#include "saidi/polynomial.hpp"
#include "saidi/structure.hpp"

namespace saidi {

/// Edge ids (or chain ids at structure level), sorted in natural order.
struct CutSet {
  std::vector<std::string> edges;

  std::size_t order() const { return edges.size(); }
  /// Ids joined with '+', used for ordering and display.
  std::string key() const;
};

enum class RiskKind { structural, inter_chain };
const char* to_string(RiskKind kind);

enum class RiskMode { exact, approx };

struct RiskRecord {
  CutSet cutset;
  double reach_prob = 1.0;
  double fail_prob = 0.0;
  double disconnected_weight = 0.0;
  double risk = 0.0;
  bool reach_exact = true;
  RiskKind kind = RiskKind::structural;
  std::vector<std::string> disconnected_nodes;  // side cut off from the source
  std::vector<std::string> chains;              // structure chains touched by the cut set

  std::size_t order() const { return cutset.order(); }
};

/// Minimal cut sets of order <= max_order (1..3) of the source component,
/// sorted by order, then by edge ids.
std::vector<CutSet> enumerate_min_cutsets(const Network& net, int max_order);
/// Every minimal cut set (node-subset enumeration, at most 22 nodes).
std::vector<CutSet> enumerate_all_min_cutsets(const Network& net);
/// Minimal cut sets of the structure graph, as chain ids (max_order 0: all orders).
std::vector<CutSet> enumerate_structural_cutsets(const StructureGraph& structure, int max_order);

bool is_minimal_cutset(const Network& net, const CutSet& x);

/// Pr(every edge of X has a source-connected endpoint in G - X), exact.
double reach_probability(const Network& net, const CutSet& x);
/// The same probability expanded to order r in the edge probabilities.
double reach_probability_truncated(const Network& net, const CutSet& x, int r);

/// Risk index of a cut set: reach · Pr(X fails) · D(X). The reach is exact
/// when the reduced source-side graph has at most 24 edges, otherwise
/// expanded to order 3 - |X|.
RiskRecord ric(const Network& net, const CutSet& x);

/// Σ of risks over every minimal cut set (exact), or the order-k
/// approximation when max_order is given.
double saidi_via_risks(const Network& net, std::optional<int> max_order = std::nullopt);

/// Risk of a minimal cut set of the structure graph (chain ids).
RiskRecord structural_risk(const StructureGraph& structure, const std::vector<std::string>& chain_ids,
                           RiskMode mode);
/// Inter-chain risk of a chain: P2 · F_ring (exact) or the order-2 ring term.
/// bridge_corrected scales the approximation by 1 - Σ p over the bridges
/// separating the chain from the source.
RiskRecord inter_risk(const StructureGraph& structure, const std::string& chain_id, RiskMode mode,
                      bool bridge_corrected = false);

/// Σ structural risks over structural cut sets of order <= max_order (0: all)
/// plus Σ inter-chain risks. Bridgeless input.
double saidi_structural(const Network& net, int max_order, RiskMode mode = RiskMode::exact);

/// Edge-level risks of order <= max_order at uniform p (or the edge
/// probabilities), descending, ties by cut-set key.
std::vector<RiskRecord> top_risks(const Network& net, std::size_t count, std::optional<double> p = std::nullopt,
                                  int max_order = 3);

/// Exact coefficient of p^2 of the uniform-p SAIDI polynomial of a bridgeless
/// network, from within-chain pairs and order-2 structural cut sets.
Rational order2_coefficient(const Network& net);

}  // namespace saidi

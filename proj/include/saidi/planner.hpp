#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saidi/network.hpp"
#include "saidi/polynomial.hpp"
#include "saidi/risk.hpp"
#include "saidi/structure.hpp"

namespace saidi {

enum class EdgeKind { chain_to_chain, inter_chain, hub_to_chain, hub_to_hub };
const char* to_string(EdgeKind kind);

struct CandidateEdge {
  std::string id;
  std::string u;
  std::string v;
  double p_fail = 0.0;
  double cost = 1.0;
};

/// Kind from the endpoints' roles in the structure graph (bridges allowed).
EdgeKind classify_candidate(const Network& net, const CandidateEdge& e);

/// q_e (R_G(X) - R_{G/e}(X)), G/e the network with e's endpoints merged.
/// approx expands reach probabilities to order 3 - |X|.
double risk_difference(const Network& net, const CutSet& x, const CandidateEdge& e,
                       RiskMode mode = RiskMode::exact);
/// R_G(X) - R_{G∪e}(X), where a crossed X becomes X ∪ {e}.
double risk_difference_direct(const Network& net, const CutSet& x, const CandidateEdge& e);

/// Order-2 coefficient of the ring score of a chain: Σ_k w_k · k · (c + 1 - k).
double ring2(const std::vector<double>& weights);
inline Rational ring2_equal(long c) { return binomial(c + 2, 3); }

/// Equal model, tap convention: a chain of c consumers split into i and c - i.
Rational inter_delta_chain_to_chain_equal(long c, long i);
/// Equal model: edge between positions i < j (0 and c + 1 are the hubs).
Rational inter_delta_inter_chain_equal(long c, long i, long j);

struct ChainDelta {
  std::string chain;
  double value = 0.0;
};

/// Inter-risk deltas of both chains for an edge between interior node i1 of
/// chain1 and interior node i2 of chain2 (1-based positions; 0 or c + 1
/// stands for a hub, giving a zero delta for that chain). exact includes
/// q_e · Pr(s ~ v_e and both hubs connected) and exact ring scores.
std::vector<ChainDelta> inter_risk_delta_chain_to_chain(const StructureGraph& structure, const std::string& chain1,
                                                        std::size_t i1, const std::string& chain2, std::size_t i2,
                                                        RiskMode mode = RiskMode::approx, double q_e = 1.0);
/// Order-2 inter-risk delta of an edge joining positions i < j of one chain.
double inter_risk_delta_inter_chain(const StructureGraph& structure, const std::string& chain, std::size_t i,
                                    std::size_t j);

enum class FactorVariant { derived, printed, symmetric };

/// Structural risk delta of a structural cut set X (chain ids) for a
/// candidate edge, by contracting the edge and summing the risks of the cut
/// sets X maps to. The printed and symmetric variants replace the reach of
/// the far chain-to-chain cut set by reach(X)·(1 - p_{C1,1} p_{C1,2}) and
/// reach(X)·(1 - p_{C1,1} p_{C2,1}).
double structural_risk_delta(const Network& net, const std::vector<std::string>& chain_ids, const CandidateEdge& e,
                             FactorVariant variant = FactorVariant::derived);

struct RiskDelta {
  CandidateEdge edge;
  EdgeKind kind = EdgeKind::hub_to_hub;
  std::vector<std::pair<CutSet, double>> cut_deltas;  // edge-level cut sets of order <= 3
  std::vector<ChainDelta> inter_deltas;              // order-2 inter-risk deltas
  double saidi_before = 0.0;
  double saidi_after = 0.0;
  double total = 0.0;  // saidi_before - saidi_after
  double effectiveness = 0.0;
  bool infinite_effectiveness = false;
  bool exact = true;
};

/// exact: F_G - F_{G∪e}; approx: difference of order-3 approximations.
RiskDelta evaluate_candidate(const Network& net, const CandidateEdge& e, std::optional<double> p = std::nullopt,
                             RiskMode mode = RiskMode::exact);

/// Every candidate evaluated on the same network, best total first (ties by
/// id). This is the brute-force placement search for general weights and
/// probabilities, where no closed form for the best edge is known.
std::vector<RiskDelta> rank_candidates(const Network& net, const std::vector<CandidateEdge>& candidates,
                                       std::optional<double> p = std::nullopt, RiskMode mode = RiskMode::exact);

struct PlanStep {
  RiskDelta delta;
  double cumulative_cost = 0.0;
};

/// Greedy: take the most cost-effective positive candidate fitting the
/// remaining budget, commit it, re-evaluate. Ties by candidate id.
std::vector<PlanStep> suggest_edges(const Network& net, const std::vector<CandidateEdge>& candidates, double budget,
                                    std::optional<double> p = std::nullopt, RiskMode mode = RiskMode::approx);

// Grid: `cols` vertical lines of `rows` nodes r<i>c<j>, filled top and bottom
// rows, sources r0c0 and r<rows-1>c<cols-1>. Gap g joins columns g and g+1;
// a placement lists the interior rows (1..rows-2) with an edge in each gap.
using GridPlacement = std::vector<std::vector<int>>;

/// Σ over structure chains of the ring second coefficient C(c + 2, 3).
long long grid_score(int rows, int cols, const GridPlacement& placement);

struct GridPlan {
  GridPlacement placement;
  long long score = 0;
};

/// Minimizes grid_score with at most edges_per_gap[g] edges in gap g.
GridPlan grid_dp(int rows, int cols, const std::vector<int>& edges_per_gap);
/// Exhaustive search over the same placements (small grids).
GridPlan grid_exhaustive(int rows, int cols, const std::vector<int>& edges_per_gap);

struct AuditViolation {
  std::string rule;
  std::string detail;
};

struct AuditReport {
  std::vector<std::string> bridges;
  std::map<int, int> hub_degree_histogram;
  bool three_regular = false;
  bool three_connected = false;
  bool super_three_connected = false;
  std::size_t hub_count = 0;
  std::size_t chain_count = 0;
  std::size_t chain_length_min = 0;
  std::size_t chain_length_max = 0;
  std::size_t chain_length_spread = 0;
  std::vector<AuditViolation> violations;

  bool passed() const { return violations.empty(); }
};

AuditReport design_rule_audit(const Network& net);

}  // namespace saidi

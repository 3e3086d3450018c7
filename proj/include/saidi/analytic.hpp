#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "saidi/network.hpp"
#include "saidi/polynomial.hpp"

namespace saidi {

class StructureGraph;

// Trees: one source, connected, m = (node count) - 1.

/// Uniform-p SAIDI polynomial of a tree with general weights: Σ_v w_v (1 - q^{depth v}).
Polynomial saidi_tree(const Network& tree);
/// SAIDI of a tree at its own edge probabilities.
double saidi_tree_value(const Network& tree);
/// First-order value Σ_e p_e D_T(e).
double tree_first_order(const Network& tree);
/// (Π_{e' on the source path above e} q_e') · p_e · D_T(e).
double tree_edge_risk(const Network& tree, std::string_view edge_id);

/// Path with n unit-weight consumers: Σ_k (-1)^{k-1} C(n+1, k+1) p^k.
Polynomial saidi_path_equal(long n);
/// Ring with n unit-weight consumers and n+1 edges: Σ_k (-1)^k (k-1) C(n+2, k+1) p^k.
Polynomial saidi_ring_equal(long n);
/// Normalized closed form F/n = 1 + q^{n+1} - (2/n) q (1 - q^n) / p, with value 0 at p = 0.
double ring_equal_normalized(long n, double p);

/// General ring: weights w_1..w_n in cyclic order, probs p_1..p_{n+1} where
/// edge k joins consumer k-1 and k (consumer 0 and n+1 are the source).
double saidi_ring_general(const std::vector<double>& weights, const std::vector<double>& probs);
/// Risk of the cut set {e_i, e_j}, 1 <= i < j <= n+1 (0 when i == j).
double ring_cutset_risk(const std::vector<double>& weights, const std::vector<double>& probs, std::size_t i,
                        std::size_t j);

/// Second coefficient of the ring with c unit consumers, (c^3 + 3c^2 + 2c) / 6.
Rational ring_second_coeff(long c);
/// ((n/k)^2 + 3(n/k) + 2) / (n^2 + 3n + 2) with n/k rounded down.
Rational split_ring_ratio_exact(long n, long k);
double split_ring_ratio(long n, long k);

/// k nonnegative integers summing to C, differing by at most one, larger ones first.
std::vector<long> balanced_partition(long C, long k);

/// (1/12) Σ_chains c(c+1)(c+2)(2n - (c+1)) with n the total node count.
Rational pairwise_second_coeff(const StructureGraph& structure);

}  // namespace saidi

#pragma once

#include <optional>
#include <vector>

#include "saidi/network.hpp"
#include "saidi/polynomial.hpp"

namespace saidi {

/// Hard guard of the 2^m oracle.
inline constexpr std::size_t kBruteForceMaxEdges = 24;
/// Deletion-contraction guard for plain (non structure-graph) recursion.
inline constexpr std::size_t kDeletionContractionMaxEdges = 40;
/// Exact polynomials are limited to this degree.
inline constexpr std::size_t kPolynomialDegreeCap = 64;

// Brute-force oracle: Σ over all 2^m edge states of Pr(state) × disconnected weight.
double saidi_bruteforce(const Network& net);
/// Same sum with every p_fail taken as an exact rational (m <= 16).
Rational saidi_bruteforce_exact(const Network& net);
/// Uniform-p binomial form: b_k = Σ_{|S| = k} disconnected weight when exactly S fails.
BinomialPolynomial saidi_bruteforce_binomial(const Network& net);
Polynomial saidi_bruteforce_polynomial(const Network& net);

/// Deletion-contraction at the edge probabilities (m <= 40).
double saidi_deletion_contraction(const Network& net);
/// Deletion-contraction with every edge failing with probability p (m <= 40).
Polynomial saidi_deletion_contraction_polynomial(const Network& net);

/// Exact SAIDI: ring-path formula on the structure graph when it is small,
/// deletion-contraction otherwise. Throws SizeGuardError beyond the guards.
double saidi_exact(const Network& net);
/// Exact uniform-p polynomial (degree <= 64).
Polynomial saidi_exact_polynomial(const Network& net);

/// Coefficients of t^0..t^k of SAIDI with every p_e replaced by p_e·t: the
/// order-k truncation, built from minimal cut sets of order <= k with reach
/// probabilities expanded to order k - |X| (k <= 3), or from edge subsets of
/// size <= k (k = 4, 5).
std::vector<double> saidi_korder_series(const Network& net, int k);
/// Subset-expansion route for any k <= 5 (cross-check of the cut-set route).
std::vector<double> saidi_korder_expansion_series(const Network& net, int k);
/// Order-k approximation at the edge probabilities, or at uniform p when given.
double saidi_korder(const Network& net, int k, std::optional<double> p = std::nullopt);
/// Uniform-p power coefficients a_0..a_k of the order-k approximation.
std::vector<double> korder_coefficients(const Network& net, int k);

/// Smallest uniform p with |exact(p) - korder(p)| / W >= eps (W = total
/// consumer weight): grid scan, then bisection to 1e-4. Returns 1 when the
/// error never reaches eps and 0 when eps <= 0.
double approx_threshold(const Network& net, int k, double eps);

enum class EvalMode { exact_polynomial, numeric, korder };

struct EvalRequest {
  EvalMode mode = EvalMode::numeric;
  std::optional<double> p;  // uniform override of every edge probability
  int k = 3;
};

struct EvalResult {
  double saidi = 0.0;
  double normalized = 0.0;
  std::optional<Polynomial> polynomial;
};

EvalResult evaluate(const Network& net, const EvalRequest& request);

}  // namespace saidi

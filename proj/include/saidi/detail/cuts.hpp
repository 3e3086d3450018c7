#pragma once

#include <vector>

#include "saidi/graph_core.hpp"

namespace saidi::detail {

struct RawCut {
  std::vector<int> edges;   // ascending edge indices
  std::vector<char> b_side; // nodes cut off from the source
};

/// Minimal cut sets of order <= max_order (<= 3) of a connected graph.
std::vector<RawCut> min_cuts_upto3(int n, int source, const EdgeEnds& ends, int max_order);
/// Every minimal cut set, one per connected source-free side whose
/// complement is connected (n <= 22).
std::vector<RawCut> min_cuts_all(int n, int source, const EdgeEnds& ends);

/// Side B of an edge set: nodes unreachable from the source after removal.
std::vector<char> cut_off_side(int n, int source, const EdgeEnds& ends, const std::vector<int>& removed);

/// Graph on the source side A of a cut (edges with both ends in A), and the
/// terminals whose joint connection to the source is the reach event.
struct ReachProblem {
  int n = 0;
  EdgeEnds ends;
  std::vector<int> edge_map;  // local edge -> original edge
  std::vector<int> terminals; // local indices, source first
};

ReachProblem reach_problem(int n, int source, const EdgeEnds& ends, const RawCut& cut);

/// Exact Pr(all terminals connected to terminals[0]).
double reach_exact(const ReachProblem& rp, const std::vector<double>& p, std::size_t edge_guard = 24);

/// Truncated series (in t, with p_e -> p_e·t) of Pr(some terminal is not
/// connected to terminals[0]) up to order r.
std::vector<double> unreach_series(const ReachProblem& rp, const std::vector<double>& p, int r);

/// Σ over edge subsets S with |S| <= k of f(S)·Π_S p_e t·Π_{e∉S}(1 - p_e t),
/// truncated at t^k. f receives a removed-edge mask.
template <class F>
std::vector<double> subset_series(int m, const std::vector<double>& p, int k, F&& f);

}  // namespace saidi::detail

#include <cmath>
#include <stdexcept>

#include "saidi/errors.hpp"

namespace saidi::detail {

template <class F>
std::vector<double> subset_series(int m, const std::vector<double>& p, int k, F&& f) {
  double count = 0.0, term = 1.0;
  for (int s = 0; s <= std::min(k, m); ++s) {
    count += term;
    term = term * (m - s) / (s + 1);
  }
  if (count > 6e7) throw SizeGuardError("subset expansion: too many edge subsets");
  // E(t) = Π_e (1 + p_e t) truncated at t^k.
  std::vector<double> all(k + 1, 0.0);
  all[0] = 1.0;
  for (int e = 0; e < m; ++e)
    for (int j = k; j >= 1; --j) all[j] += p[e] * all[j - 1];

  std::vector<double> out(k + 1, 0.0), comp(k + 1);
  std::vector<char> removed(m, 0);
  std::vector<int> pick;
  auto visit = [&](auto&& self, int start) -> void {
    const int s = static_cast<int>(pick.size());
    double value = f(removed);
    if (value != 0.0) {
      comp = all;
      double prod = 1.0;
      for (int e : pick) {
        prod *= p[e];
        for (int j = 1; j <= k; ++j) comp[j] -= p[e] * comp[j - 1];
      }
      for (int i = 0; s + i <= k; ++i) out[s + i] += value * prod * (i % 2 ? -comp[i] : comp[i]);
    }
    if (s == k) return;
    for (int e = start; e < m; ++e) {
      pick.push_back(e);
      removed[e] = 1;
      self(self, e + 1);
      removed[e] = 0;
      pick.pop_back();
    }
  };
  visit(visit, 0);
  return out;
}

}  // namespace saidi::detail

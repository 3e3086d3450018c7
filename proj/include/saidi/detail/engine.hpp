#pragma once

// Deletion-contraction engines shared by the exact, structure and risk
// modules. Templated on the probability scalar: double for numeric work,
// Polynomial for the uniform-p exact polynomial.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "saidi/errors.hpp"
#include "saidi/graph_core.hpp"
#include "saidi/polynomial.hpp"

namespace saidi::detail {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_weight(double w) { return w; }
};

template <>
struct ScalarOps<Polynomial> {
  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return Polynomial::one(); }
  static Polynomial from_weight(double w) { return Polynomial::constant(to_rational(w)); }
};

template <class S>
S one_minus(const S& x) {
  return ScalarOps<S>::one() - x;
}

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  void append_to(std::string& key) const {
    key.append(reinterpret_cast<const char*>(words_.data()), words_.size() * sizeof(std::uint64_t));
  }

 private:
  std::vector<std::uint64_t> words_;
};

/// Expected disconnected weight, recursing on the lowest-index live edge
/// adjacent to the (growing) source set. Memoized on the residual graph.
template <class S>
class SaidiDC {
 public:
  SaidiDC(int n, int source, EdgeEnds ends, std::vector<S> p, std::vector<double> weight)
      : n_(n), source_(source), ends_(std::move(ends)), p_(std::move(p)), weight_(std::move(weight)) {
    for (const auto& pe : p_) q_.push_back(one_minus(pe));
  }

  S run() {
    Bits alive(ends_.size()), src(n_);
    src.set(source_);
    for (std::size_t e = 0; e < ends_.size(); ++e)
      if (ends_[e].first != ends_[e].second) alive.set(e);
    double lost = prune(alive, src);
    return ScalarOps<S>::from_weight(lost) + rec(alive, src);
  }

  std::size_t states() const { return memo_.size(); }

 private:
  // Removes everything unreachable from the source set; returns its weight.
  double prune(Bits& alive, const Bits& src) {
    std::vector<std::vector<std::pair<int, int>>> adj(n_);
    std::vector<char> present(n_, 0);
    for (std::size_t e = 0; e < ends_.size(); ++e) {
      if (!alive.test(e)) continue;
      auto [a, b] = ends_[e];
      adj[a].push_back({b, static_cast<int>(e)});
      adj[b].push_back({a, static_cast<int>(e)});
      present[a] = present[b] = 1;
    }
    std::vector<char> seen(n_, 0);
    std::vector<int> stack;
    for (int v = 0; v < n_; ++v)
      if (src.test(v)) {
        seen[v] = 1;
        stack.push_back(v);
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    double lost = 0.0;
    for (int v = 0; v < n_; ++v)
      if (present[v] && !seen[v]) lost += weight_[v];
    for (std::size_t e = 0; e < ends_.size(); ++e)
      if (alive.test(e) && !seen[ends_[e].first]) alive.reset(e);
    return lost;
  }

  S rec(const Bits& alive, const Bits& src) {
    if (!alive.any()) return ScalarOps<S>::zero();
    std::string key;
    alive.append_to(key);
    for (std::size_t e = 0; e < ends_.size(); ++e) {
      if (!alive.test(e)) continue;
      key.push_back(static_cast<char>((src.test(ends_[e].first) ? 1 : 0) | (src.test(ends_[e].second) ? 2 : 0)));
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    int pivot = -1, far = -1;
    for (std::size_t e = 0; e < ends_.size(); ++e) {
      if (!alive.test(e)) continue;
      bool a = src.test(ends_[e].first), b = src.test(ends_[e].second);
      if (a != b) {
        pivot = static_cast<int>(e);
        far = a ? ends_[e].second : ends_[e].first;
        break;
      }
    }
    if (pivot < 0) throw Error("deletion-contraction: residual graph not rooted at the source");

    // Deletion: the pivot fails.
    Bits del = alive;
    del.reset(pivot);
    double lost = 0.0;
    {
      bool far_has_other = false;
      for (std::size_t e = 0; e < ends_.size(); ++e)
        if (del.test(e) && (ends_[e].first == far || ends_[e].second == far)) {
          far_has_other = true;
          break;
        }
      lost = prune(del, src);
      if (!far_has_other) lost += weight_[far];
    }
    S fail = ScalarOps<S>::from_weight(lost) + rec(del, src);

    // Contraction: the pivot works and its far endpoint joins the source.
    Bits con = alive;
    con.reset(pivot);
    Bits src2 = src;
    src2.set(far);
    for (std::size_t e = 0; e < ends_.size(); ++e)
      if (con.test(e) && src2.test(ends_[e].first) && src2.test(ends_[e].second)) con.reset(e);
    S work = rec(con, src2);

    S result = p_[pivot] * fail + q_[pivot] * work;
    memo_.emplace(std::move(key), result);
    return result;
  }

  int n_;
  int source_;
  EdgeEnds ends_;
  std::vector<S> p_;
  std::vector<S> q_;
  std::vector<double> weight_;
  std::unordered_map<std::string, S> memo_;
};

/// Canonical code of a terminal partition: 4 bits per terminal holding its
/// block label in first-occurrence order (block of terminal 0 is 0).
using PartitionCode = std::uint64_t;

inline std::vector<int> decode_partition(PartitionCode code, int terminals) {
  std::vector<int> labels(terminals);
  for (int i = 0; i < terminals; ++i) labels[i] = static_cast<int>((code >> (4 * i)) & 15U);
  return labels;
}

/// Distribution of the partition of the terminals into source-free
/// connectivity classes, by deletion-contraction on edges incident to
/// terminal groups.
template <class S>
class PartitionDC {
 public:
  PartitionDC(int n, EdgeEnds ends, std::vector<S> p, std::vector<int> terminals)
      : n_(n), ends_(std::move(ends)), p_(std::move(p)), terminals_(std::move(terminals)) {
    if (terminals_.size() > 15) throw SizeGuardError("partition distribution: too many terminals");
    for (const auto& pe : p_) q_.push_back(one_minus(pe));
  }

  std::map<PartitionCode, S> run() {
    Bits alive(ends_.size());
    for (std::size_t e = 0; e < ends_.size(); ++e)
      if (ends_[e].first != ends_[e].second) alive.set(e);
    std::vector<int> group(n_);
    for (int v = 0; v < n_; ++v) group[v] = v;
    return rec(alive, group);
  }

 private:
  void prune(Bits& alive, const std::vector<int>& group) {
    std::vector<char> terminal_group(n_, 0);
    for (int t : terminals_) terminal_group[group[t]] = 1;
    std::vector<std::vector<int>> adj(n_);
    for (std::size_t e = 0; e < ends_.size(); ++e) {
      if (!alive.test(e)) continue;
      adj[ends_[e].first].push_back(ends_[e].second);
      adj[ends_[e].second].push_back(ends_[e].first);
    }
    std::vector<char> seen(n_, 0);
    std::vector<int> stack;
    for (int v = 0; v < n_; ++v)
      if (terminal_group[group[v]]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    for (std::size_t e = 0; e < ends_.size(); ++e)
      if (alive.test(e) && !seen[ends_[e].first]) alive.reset(e);
  }

  PartitionCode code_of(const std::vector<int>& group) const {
    std::vector<int> seen_groups;
    PartitionCode code = 0;
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
      int g = group[terminals_[i]];
      auto it = std::find(seen_groups.begin(), seen_groups.end(), g);
      int label = static_cast<int>(it - seen_groups.begin());
      if (it == seen_groups.end()) seen_groups.push_back(g);
      code |= static_cast<PartitionCode>(label) << (4 * i);
    }
    return code;
  }

  std::map<PartitionCode, S> rec(Bits alive, std::vector<int> group) {
    prune(alive, group);
    std::string key;
    alive.append_to(key);
    {
      std::unordered_map<int, int> relabel;
      auto put = [&](int v) {
        auto [it, inserted] = relabel.emplace(group[v], static_cast<int>(relabel.size()));
        int label = it->second;
        key.append(reinterpret_cast<const char*>(&label), sizeof(label));
      };
      for (int t : terminals_) put(t);
      for (std::size_t e = 0; e < ends_.size(); ++e)
        if (alive.test(e)) {
          put(ends_[e].first);
          put(ends_[e].second);
        }
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<char> terminal_group(n_, 0);
    for (int t : terminals_) terminal_group[group[t]] = 1;
    int pivot = -1;
    for (std::size_t e = 0; e < ends_.size(); ++e) {
      if (!alive.test(e)) continue;
      int a = group[ends_[e].first], b = group[ends_[e].second];
      if (a != b && (terminal_group[a] || terminal_group[b])) {
        pivot = static_cast<int>(e);
        break;
      }
    }
    std::map<PartitionCode, S> result;
    if (pivot < 0) {
      result.emplace(code_of(group), ScalarOps<S>::one());
      memo_.emplace(std::move(key), result);
      return result;
    }

    Bits del = alive;
    del.reset(pivot);
    auto fail = rec(del, group);

    Bits con = alive;
    con.reset(pivot);
    int from = group[ends_[pivot].second], to = group[ends_[pivot].first];
    for (int& g : group)
      if (g == from) g = to;
    for (std::size_t e = 0; e < ends_.size(); ++e)
      if (con.test(e) && group[ends_[e].first] == group[ends_[e].second]) con.reset(e);
    auto work = rec(con, group);

    for (auto& [code, pr] : fail) result[code] = p_[pivot] * pr;
    for (auto& [code, pr] : work) {
      auto found = result.find(code);
      if (found == result.end()) result.emplace(code, q_[pivot] * pr);
      else found->second = found->second + q_[pivot] * pr;
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  int n_;
  EdgeEnds ends_;
  std::vector<S> p_;
  std::vector<S> q_;
  std::vector<int> terminals_;
  std::unordered_map<std::string, std::map<PartitionCode, S>> memo_;
};

/// Result of series/parallel reduction on non-terminal nodes; preserves the
/// distribution of terminal partitions.
template <class S>
struct ReducedGraph {
  int n = 0;
  EdgeEnds ends;
  std::vector<S> p;
  std::vector<int> terminals;
};

template <class S>
ReducedGraph<S> reduce_series_parallel(int n, const EdgeEnds& ends, const std::vector<S>& p,
                                       const std::vector<int>& terminals) {
  std::vector<char> is_terminal(n, 0);
  for (int t : terminals) is_terminal[t] = 1;
  struct E {
    int a, b;
    S p;
    bool alive;
  };
  std::vector<E> edges;
  for (std::size_t e = 0; e < ends.size(); ++e)
    if (ends[e].first != ends[e].second) edges.push_back({ends[e].first, ends[e].second, p[e], true});

  bool changed = true;
  while (changed) {
    changed = false;
    // Parallel edges collapse to one that fails when both fail.
    std::map<std::pair<int, int>, int> first;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!edges[i].alive) continue;
      auto key = std::minmax(edges[i].a, edges[i].b);
      auto [it, inserted] = first.emplace(key, static_cast<int>(i));
      if (!inserted) {
        edges[it->second].p = edges[it->second].p * edges[i].p;
        edges[i].alive = false;
        changed = true;
      }
    }
    std::vector<std::vector<int>> incident(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].alive) {
        incident[edges[i].a].push_back(static_cast<int>(i));
        incident[edges[i].b].push_back(static_cast<int>(i));
      }
    for (int v = 0; v < n; ++v) {
      if (is_terminal[v]) continue;
      std::vector<int> live;
      for (int i : incident[v])
        if (edges[i].alive) live.push_back(i);
      if (live.size() == 1) {
        edges[live[0]].alive = false;
        changed = true;
      } else if (live.size() == 2) {
        E& x = edges[live[0]];
        E& y = edges[live[1]];
        int xo = x.a == v ? x.b : x.a;
        int yo = y.a == v ? y.b : y.a;
        if (xo == v || yo == v) continue;
        S q = one_minus(x.p) * one_minus(y.p);
        x = E{xo, yo, one_minus(q), xo != yo};
        y.alive = false;
        changed = true;
        break;  // incidence lists are stale now
      }
    }
  }

  ReducedGraph<S> out;
  std::vector<int> index(n, -1);
  auto idx = [&](int v) {
    if (index[v] < 0) index[v] = out.n++;
    return index[v];
  };
  for (int t : terminals) out.terminals.push_back(idx(t));
  for (const E& e : edges)
    if (e.alive) {
      out.ends.emplace_back(idx(e.a), idx(e.b));
      out.p.push_back(e.p);
    }
  return out;
}

/// Partition distribution of `terminals` with series/parallel reduction first.
template <class S>
std::map<PartitionCode, S> terminal_partitions(int n, const EdgeEnds& ends, const std::vector<S>& p,
                                                const std::vector<int>& terminals,
                                                std::size_t edge_guard = 64) {
  auto reduced = reduce_series_parallel(n, ends, p, terminals);
  if (reduced.ends.size() > edge_guard)
    throw SizeGuardError("terminal connectivity: reduced graph has " + std::to_string(reduced.ends.size()) +
                         " edges, guard is " + std::to_string(edge_guard));
  PartitionDC<S> dc(reduced.n, reduced.ends, reduced.p, reduced.terminals);
  return dc.run();
}

/// Probability that every terminal lies in one connectivity class.
template <class S>
S all_terminals_connected(int n, const EdgeEnds& ends, const std::vector<S>& p, const std::vector<int>& terminals,
                          std::size_t edge_guard = 64) {
  std::vector<int> uniq = terminals;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (uniq.size() <= 1) return ScalarOps<S>::one();
  auto dist = terminal_partitions(n, ends, p, uniq, edge_guard);
  auto it = dist.find(PartitionCode{0});
  return it == dist.end() ? ScalarOps<S>::zero() : it->second;
}

}  // namespace saidi::detail

#include "saidi/analytic.hpp"

#include <cmath>
#include <queue>

#include "saidi/errors.hpp"
#include "saidi/structure.hpp"

namespace saidi {

namespace {

struct TreeView {
  std::vector<int> parent_edge;  // per node, -1 for the source
  std::vector<int> parent;
  std::vector<int> order;        // BFS order from the source
  std::vector<double> subtree;   // subtree weight per node
  std::vector<int> depth;
};

TreeView tree_view(const Network& tree) {
  auto sources = tree.source_ids();
  if (sources.size() != 1) throw ValidationError("tree input must have exactly one source");
  const int n = static_cast<int>(tree.node_count());
  if (tree.edge_count() + 1 != tree.node_count()) throw ValidationError("input is not a tree (m != n_total - 1)");
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& edge = tree.edges()[e];
    if (edge.is_self_loop()) throw ValidationError("input is not a tree (self-loop " + edge.id + ")");
    int a = static_cast<int>(tree.node_index(edge.u)), b = static_cast<int>(tree.node_index(edge.v));
    adj[a].push_back({b, static_cast<int>(e)});
    adj[b].push_back({a, static_cast<int>(e)});
  }
  TreeView t;
  t.parent_edge.assign(n, -1);
  t.parent.assign(n, -1);
  t.depth.assign(n, 0);
  std::vector<char> seen(n, 0);
  int root = static_cast<int>(tree.node_index(sources[0]));
  std::queue<int> q;
  q.push(root);
  seen[root] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    t.order.push_back(v);
    for (auto [w, e] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      t.parent[w] = v;
      t.parent_edge[w] = e;
      t.depth[w] = t.depth[v] + 1;
      q.push(w);
    }
  }
  if (static_cast<int>(t.order.size()) != n) throw ValidationError("input is not a tree (disconnected)");
  t.subtree.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    int v = t.order[i];
    if (v != root) t.subtree[v] += tree.nodes()[v].weight;
    if (t.parent[v] >= 0) t.subtree[t.parent[v]] += t.subtree[v];
  }
  return t;
}

}  // namespace

Polynomial saidi_tree(const Network& tree) {
  TreeView t = tree_view(tree);
  Polynomial total = Polynomial::zero().padded(tree.edge_count());
  Polynomial q = Polynomial::complement();
  for (int v : t.order) {
    if (t.parent[v] < 0) continue;
    Polynomial qd = Polynomial::one();
    for (int k = 0; k < t.depth[v]; ++k) qd = qd * q;
    total += (Polynomial::one() - qd) * to_rational(tree.nodes()[v].weight);
  }
  return total;
}

double saidi_tree_value(const Network& tree) {
  TreeView t = tree_view(tree);
  std::vector<double> reach(tree.node_count(), 1.0);
  double total = 0.0;
  for (int v : t.order) {
    if (t.parent[v] < 0) continue;
    reach[v] = reach[t.parent[v]] * tree.edges()[t.parent_edge[v]].q();
    total += tree.nodes()[v].weight * (1.0 - reach[v]);
  }
  return total;
}

double tree_first_order(const Network& tree) {
  TreeView t = tree_view(tree);
  double total = 0.0;
  for (int v : t.order)
    if (t.parent[v] >= 0) total += tree.edges()[t.parent_edge[v]].p_fail * t.subtree[v];
  return total;
}

double tree_edge_risk(const Network& tree, std::string_view edge_id) {
  TreeView t = tree_view(tree);
  std::size_t e = tree.edge_index(edge_id);
  const Edge& edge = tree.edges()[e];
  int a = static_cast<int>(tree.node_index(edge.u)), b = static_cast<int>(tree.node_index(edge.v));
  int child = t.parent[b] == a && t.parent_edge[b] == static_cast<int>(e) ? b : a;
  double reach = 1.0;
  for (int v = t.parent[child]; v >= 0 && t.parent[v] >= 0; v = t.parent[v]) reach *= tree.edges()[t.parent_edge[v]].q();
  return reach * edge.p_fail * t.subtree[child];
}

Polynomial saidi_path_equal(long n) {
  if (n < 1) throw ValidationError("saidi_path_equal: n must be >= 1");
  std::vector<Rational> c(n + 1, Rational(0));
  for (long k = 1; k <= n; ++k) {
    Rational term = binomial(n + 1, k + 1);
    c[k] = (k % 2 == 1) ? term : Rational(-term);
  }
  return Polynomial(std::move(c));
}

Polynomial saidi_ring_equal(long n) {
  if (n < 1) throw ValidationError("saidi_ring_equal: n must be >= 1");
  std::vector<Rational> c(n + 2, Rational(0));
  for (long k = 2; k <= n + 1; ++k) {
    Rational term = Rational(k - 1) * binomial(n + 2, k + 1);
    c[k] = (k % 2 == 0) ? term : Rational(-term);
  }
  return Polynomial(std::move(c));
}

double ring_equal_normalized(long n, double p) {
  if (n < 1) throw ValidationError("ring_equal_normalized: n must be >= 1");
  if (p == 0.0) return 0.0;
  double q = 1.0 - p;
  return 1.0 + std::pow(q, n + 1) - (2.0 / n) * q * (1.0 - std::pow(q, n)) / p;
}

double saidi_ring_general(const std::vector<double>& weights, const std::vector<double>& probs) {
  const std::size_t n = weights.size();
  if (probs.size() != n + 1) throw ValidationError("saidi_ring_general: need n+1 edge probabilities");
  // prefix[v] = Π_{i<=v} q_i, suffix[v] = Π_{i>v} q_i (1-based edges).
  std::vector<double> prefix(n + 2, 1.0), suffix(n + 2, 1.0);
  for (std::size_t v = 1; v <= n; ++v) prefix[v] = prefix[v - 1] * (1.0 - probs[v - 1]);
  for (std::size_t v = n; v >= 1; --v) suffix[v] = suffix[v + 1] * (1.0 - probs[v]);
  double total = 0.0;
  for (std::size_t v = 1; v <= n; ++v) total += weights[v - 1] * (1.0 - prefix[v]) * (1.0 - suffix[v]);
  return total;
}

double ring_cutset_risk(const std::vector<double>& weights, const std::vector<double>& probs, std::size_t i,
                        std::size_t j) {
  const std::size_t n = weights.size();
  if (probs.size() != n + 1) throw ValidationError("ring_cutset_risk: need n+1 edge probabilities");
  if (i > j) std::swap(i, j);
  if (i < 1 || j > n + 1) throw ValidationError("ring_cutset_risk: edge index out of range");
  if (i == j) return 0.0;
  double reach = 1.0;
  for (std::size_t k = 1; k < i; ++k) reach *= 1.0 - probs[k - 1];
  for (std::size_t k = j + 1; k <= n + 1; ++k) reach *= 1.0 - probs[k - 1];
  double d = 0.0;
  for (std::size_t k = i; k < j; ++k) d += weights[k - 1];
  return reach * probs[i - 1] * probs[j - 1] * d;
}

Rational ring_second_coeff(long c) {
  if (c < 0) throw ValidationError("ring_second_coeff: c must be >= 0");
  return Rational(c * c * c + 3 * c * c + 2 * c) / 6;
}

Rational split_ring_ratio_exact(long n, long k) {
  if (n < 1 || k < 1) throw ValidationError("split_ring_ratio: n and k must be >= 1");
  long s = n / k;
  return Rational(s * s + 3 * s + 2) / Rational(n * n + 3 * n + 2);
}

double split_ring_ratio(long n, long k) { return to_double(split_ring_ratio_exact(n, k)); }

std::vector<long> balanced_partition(long C, long k) {
  if (C < 0 || k < 1) throw ValidationError("balanced_partition: need C >= 0 and k >= 1");
  std::vector<long> parts(k, C / k);
  for (long i = 0; i < C % k; ++i) ++parts[i];
  return parts;
}

Rational pairwise_second_coeff(const StructureGraph& structure) {
  long n = static_cast<long>(structure.network.node_count());
  Rational total = 0;
  for (const Chain& chain : structure.chains) {
    long c = static_cast<long>(chain.length());
    total += Rational(c * (c + 1) * (c + 2)) * Rational(2 * n - (c + 1));
  }
  return total / 12;
}

}  // namespace saidi

#include "saidi/exact.hpp"

#include <algorithm>
#include <cmath>

#include "saidi/detail/chains.hpp"
#include "saidi/detail/cuts.hpp"
#include "saidi/detail/engine.hpp"
#include "saidi/graph_core.hpp"

namespace saidi {

namespace {

// Index view used by the oracle: every node and every edge of the input,
// sources not merged.
struct RawView {
  int n = 0;
  EdgeEnds ends;
  std::vector<double> p;
  std::vector<double> weight;
  std::vector<char> source;
};

RawView raw_view(const Network& net, std::size_t guard) {
  if (net.edge_count() > guard)
    throw SizeGuardError("brute force: " + std::to_string(net.edge_count()) + " edges exceeds the guard of " +
                         std::to_string(guard));
  RawView v;
  v.n = static_cast<int>(net.node_count());
  for (const Node& node : net.nodes()) {
    v.weight.push_back(node.is_source ? 0.0 : node.weight);
    v.source.push_back(node.is_source ? 1 : 0);
  }
  for (const Edge& e : net.edges()) {
    v.ends.emplace_back(static_cast<int>(net.node_index(e.u)), static_cast<int>(net.node_index(e.v)));
    v.p.push_back(e.p_fail);
  }
  return v;
}

// Marks disconnected nodes for one state (bit e set = edge e failed).
void disconnected_nodes(const RawView& v, std::uint64_t failed, UnionFind& uf, std::vector<char>& lost) {
  uf.reset(v.n);
  for (std::size_t e = 0; e < v.ends.size(); ++e)
    if (!((failed >> e) & 1U)) uf.unite(v.ends[e].first, v.ends[e].second);
  std::vector<char> powered(v.n, 0);
  for (int x = 0; x < v.n; ++x)
    if (v.source[x]) powered[uf.find(x)] = 1;
  lost.assign(v.n, 0);
  for (int x = 0; x < v.n; ++x) lost[x] = !powered[uf.find(x)];
}

// Neumaier compensated sum.
struct Accumulator {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
    else carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

double saidi_bruteforce(const Network& net) {
  RawView v = raw_view(net, kBruteForceMaxEdges);
  const std::size_t m = v.ends.size();
  UnionFind uf;
  std::vector<char> lost;
  Accumulator acc;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    double pr = 1.0;
    for (std::size_t e = 0; e < m; ++e) pr *= ((s >> e) & 1U) ? v.p[e] : 1.0 - v.p[e];
    if (pr == 0.0) continue;
    disconnected_nodes(v, s, uf, lost);
    double d = 0.0;
    for (int x = 0; x < v.n; ++x)
      if (lost[x]) d += v.weight[x];
    acc.add(pr * d);
  }
  return acc.value();
}

Rational saidi_bruteforce_exact(const Network& net) {
  RawView v = raw_view(net, 16);
  const std::size_t m = v.ends.size();
  std::vector<Rational> p, q, w;
  for (double x : v.p) {
    p.push_back(to_rational(x));
    q.push_back(1 - p.back());
  }
  for (double x : v.weight) w.push_back(to_rational(x));
  UnionFind uf;
  std::vector<char> lost;
  Rational total = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    disconnected_nodes(v, s, uf, lost);
    Rational d = 0;
    for (int x = 0; x < v.n; ++x)
      if (lost[x]) d += w[x];
    if (d == 0) continue;
    Rational pr = 1;
    for (std::size_t e = 0; e < m; ++e) pr *= ((s >> e) & 1U) ? p[e] : q[e];
    total += pr * d;
  }
  return total;
}

BinomialPolynomial saidi_bruteforce_binomial(const Network& net) {
  RawView v = raw_view(net, kBruteForceMaxEdges);
  const std::size_t m = v.ends.size();
  // count[x][k]: number of k-subsets whose failure disconnects x.
  std::vector<std::vector<std::uint64_t>> count(v.n, std::vector<std::uint64_t>(m + 1, 0));
  UnionFind uf;
  std::vector<char> lost;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    disconnected_nodes(v, s, uf, lost);
    int k = __builtin_popcountll(s);
    for (int x = 0; x < v.n; ++x)
      if (lost[x]) ++count[x][k];
  }
  BinomialPolynomial out;
  out.m = m;
  out.b.assign(m + 1, Rational(0));
  for (int x = 0; x < v.n; ++x) {
    if (v.weight[x] == 0.0) continue;
    Rational w = to_rational(v.weight[x]);
    for (std::size_t k = 0; k <= m; ++k)
      if (count[x][k]) out.b[k] += w * Rational(static_cast<unsigned long>(count[x][k]));
  }
  return out;
}

Polynomial saidi_bruteforce_polynomial(const Network& net) { return to_power(saidi_bruteforce_binomial(net)); }

double saidi_deletion_contraction(const Network& net) {
  CompactGraph g = compact(net);
  if (static_cast<std::size_t>(g.edge_count()) > kDeletionContractionMaxEdges)
    throw SizeGuardError("deletion-contraction: " + std::to_string(g.edge_count()) + " edges exceeds the guard of " +
                         std::to_string(kDeletionContractionMaxEdges));
  detail::SaidiDC<double> dc(g.node_count(), g.source, g.ends, g.p, g.weight);
  return dc.run() + g.unreachable_weight;
}

Polynomial saidi_deletion_contraction_polynomial(const Network& net) {
  CompactGraph g = compact(net);
  if (static_cast<std::size_t>(g.edge_count()) > kDeletionContractionMaxEdges)
    throw SizeGuardError("deletion-contraction: " + std::to_string(g.edge_count()) + " edges exceeds the guard of " +
                         std::to_string(kDeletionContractionMaxEdges));
  std::vector<Polynomial> p(g.edge_count(), Polynomial::variable());
  detail::SaidiDC<Polynomial> dc(g.node_count(), g.source, g.ends, p, g.weight);
  Polynomial f = dc.run() + Polynomial::constant(to_rational(g.unreachable_weight));
  return f.padded(net.edge_count());
}

double saidi_exact(const Network& net) {
  CompactGraph g = compact(net);
  return detail::exact_saidi_generic<double>(g.node_count(), g.source, g.ends, g.p, g.weight) + g.unreachable_weight;
}

Polynomial saidi_exact_polynomial(const Network& net) {
  CompactGraph g = compact(net);
  if (static_cast<std::size_t>(g.edge_count()) > kPolynomialDegreeCap)
    throw SizeGuardError("exact polynomial: degree " + std::to_string(g.edge_count()) + " exceeds the cap of " +
                         std::to_string(kPolynomialDegreeCap));
  std::vector<Polynomial> p(g.edge_count(), Polynomial::variable());
  Polynomial f = detail::exact_saidi_generic<Polynomial>(g.node_count(), g.source, g.ends, p, g.weight);
  f += Polynomial::constant(to_rational(g.unreachable_weight));
  return f.padded(net.edge_count());
}

std::vector<double> saidi_korder_series(const Network& net, int k) {
  if (k < 1 || k > 5) throw ValidationError("k-order approximation: k must be within 1..5");
  if (k > 3) return saidi_korder_expansion_series(net, k);
  CompactGraph g = compact(net);
  std::vector<double> out(k + 1, 0.0);
  out[0] = g.unreachable_weight;
  auto cuts = detail::min_cuts_upto3(g.node_count(), g.source, g.ends, k);
  for (const auto& cut : cuts) {
    const int order = static_cast<int>(cut.edges.size());
    double d = 0.0;
    for (int v = 0; v < g.node_count(); ++v)
      if (cut.b_side[v]) d += g.weight[v];
    double fail = 1.0;
    for (int e : cut.edges) fail *= g.p[e];
    if (d == 0.0 || fail == 0.0) continue;
    const int r = k - order;
    std::vector<double> unreach(r + 1, 0.0);
    if (r > 0) {
      auto rp = detail::reach_problem(g.node_count(), g.source, g.ends, cut);
      std::vector<double> lp;
      for (int e : rp.edge_map) lp.push_back(g.p[e]);
      unreach = detail::unreach_series(rp, lp, r);
    }
    for (int j = 0; j <= r; ++j) out[order + j] += fail * d * ((j == 0 ? 1.0 : 0.0) - unreach[j]);
  }
  return out;
}

std::vector<double> saidi_korder_expansion_series(const Network& net, int k) {
  if (k < 1 || k > 5) throw ValidationError("k-order approximation: k must be within 1..5");
  CompactGraph g = compact(net);
  const int n = g.node_count();
  UnionFind uf(n);
  auto lost_weight = [&](const std::vector<char>& removed) {
    uf.reset(n);
    for (int e = 0; e < g.edge_count(); ++e)
      if (!removed[e]) uf.unite(g.ends[e].first, g.ends[e].second);
    int root = uf.find(g.source);
    double d = 0.0;
    for (int v = 0; v < n; ++v)
      if (uf.find(v) != root) d += g.weight[v];
    return d;
  };
  auto out = detail::subset_series(g.edge_count(), g.p, k, lost_weight);
  out[0] += g.unreachable_weight;
  return out;
}

double saidi_korder(const Network& net, int k, std::optional<double> p) {
  Network target = p ? net.with_uniform_p(*p) : net;
  auto series = saidi_korder_series(target, k);
  Accumulator acc;
  for (double c : series) acc.add(c);
  return acc.value();
}

std::vector<double> korder_coefficients(const Network& net, int k) {
  return saidi_korder_series(net.with_uniform_p(1.0), k);
}

namespace {

std::vector<double> threshold_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i * 1e-4);
  for (int i = 2; i <= 50; ++i) grid.push_back(i * 1e-3);
  for (int i = 6; i <= 100; ++i) grid.push_back(i * 1e-2);
  return grid;
}

}  // namespace

double approx_threshold(const Network& net, int k, double eps) {
  if (eps <= 0.0) return 0.0;
  const double total = net.total_weight();
  if (total <= 0.0) return 1.0;
  auto coeffs = korder_coefficients(net, k);
  std::optional<Polynomial> exact_poly;
  if (net.edge_count() <= 30) exact_poly = saidi_exact_polynomial(net);
  auto error = [&](double p) {
    double exact = exact_poly ? exact_poly->evaluate(p) : saidi_exact(net.with_uniform_p(p));
    double approx = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) approx = approx * p + coeffs[j];
    return std::abs(exact - approx) / total;
  };
  double prev = 0.0;
  for (double p : threshold_grid()) {
    if (error(p) >= eps) {
      double lo = prev, hi = p;
      while (hi - lo > 1e-4) {
        double mid = 0.5 * (lo + hi);
        if (error(mid) >= eps) hi = mid;
        else lo = mid;
      }
      return hi;
    }
    prev = p;
  }
  return 1.0;
}

EvalResult evaluate(const Network& net, const EvalRequest& request) {
  if (request.p && !(*request.p >= 0.0 && *request.p <= 1.0)) throw ValidationError("p must be within [0,1]");
  Network target = request.p ? net.with_uniform_p(*request.p) : net;
  EvalResult out;
  switch (request.mode) {
    case EvalMode::exact_polynomial: {
      Polynomial f = saidi_exact_polynomial(target);
      out.saidi = request.p ? f.evaluate(*request.p) : saidi_exact(target);
      out.polynomial = std::move(f);
      break;
    }
    case EvalMode::numeric: out.saidi = saidi_exact(target); break;
    case EvalMode::korder: out.saidi = saidi_korder(target, request.k); break;
  }
  double w = target.total_weight();
  out.normalized = w > 0.0 ? out.saidi / w : 0.0;
  return out;
}

}  // namespace saidi

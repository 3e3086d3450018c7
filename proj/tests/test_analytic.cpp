#include "doctest.h"
#include "oracle.hpp"
#include "saidi/analytic.hpp"
#include "saidi/generators.hpp"
#include "saidi/structure.hpp"

using namespace saidi;

namespace {

Polynomial poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

}  // namespace

TEST_CASE("tree polynomials") {
  CHECK(saidi_tree(star(4)) == poly({0, 4}));
  CHECK(saidi_tree(path(2)).evaluate(0.1) == doctest::Approx(0.29).epsilon(1e-14));
  CHECK(saidi_tree_value(path(2).with_uniform_p(0.1)) == doctest::Approx(0.29).epsilon(1e-14));
  CHECK_THROWS_AS(saidi_tree(ring(3)), ValidationError);

  oracle::Gen gen(31);
  for (int t = 0; t < 15; ++t) {
    Network tree = gen.connected(gen.uniform(2, 9), 0, false);
    Network unit = tree.with_uniform_p(0.2);
    CHECK(saidi_tree(unit).evaluate(0.2) == doctest::Approx(oracle::saidi(unit)).epsilon(1e-12));
    CHECK(saidi_tree_value(tree) == doctest::Approx(oracle::saidi(tree)).epsilon(1e-12));
    double risks = 0.0;
    for (const auto& e : tree.edges()) risks += tree_edge_risk(tree, e.id);
    CHECK(risks == doctest::Approx(saidi_tree_value(tree)).epsilon(1e-12));
    // Σ_e D_T(e) = Σ_v w_v depth_v, the first coefficient.
    CHECK(to_double(saidi_tree(tree).coeff(1)) == doctest::Approx(tree_first_order(tree.with_uniform_p(1.0))));
  }
  CHECK(tree_edge_risk(star(3).with_uniform_p(0.3), "e2") == doctest::Approx(0.3));
  CHECK(tree_edge_risk(path(2).with_uniform_p(0.1), "e2") == doctest::Approx(0.09).epsilon(1e-14));
}

TEST_CASE("path and ring closed forms") {
  CHECK(saidi_path_equal(1) == poly({0, 1}));
  CHECK(saidi_path_equal(2) == poly({0, 3, -1}));
  CHECK(saidi_path_equal(3) == poly({0, 6, -4, 1}));
  for (int n = 1; n <= 6; ++n)
    CHECK(saidi_path_equal(n).evaluate(0.3) == doctest::Approx(oracle::saidi(path(n, 0.3))).epsilon(1e-12));

  CHECK(ring_equal_normalized(1, 0.1) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(ring_equal_normalized(3, 0.1) == doctest::Approx(0.0301).epsilon(1e-12));
  CHECK(ring_equal_normalized(3, 0.0) == 0.0);
  CHECK(saidi_ring_equal(3).coeff(2) / 3 == Rational(20) / 6);
  CHECK_THROWS_AS(saidi_ring_equal(0), ValidationError);
  for (int n = 1; n <= 7; ++n)
    for (double p : {0.01, 0.1, 0.3})
      CHECK(saidi_ring_equal(n).evaluate(p) == doctest::Approx(oracle::saidi(ring(n, p))).epsilon(1e-12));
}

TEST_CASE("general ring") {
  std::vector<double> w{1, 1, 1}, p{0.1, 0.1, 0.1, 0.1};
  CHECK(saidi_ring_general(w, p) == doctest::Approx(3 * 0.0301).epsilon(1e-12));
  CHECK(saidi_ring_general(w, {0, 0, 0, 0}) == 0.0);
  // One edge always failed: a path from each side.
  CHECK(saidi_ring_general({1, 1}, {0.2, 0.2, 1.0}) == doctest::Approx(saidi_path_equal(2).evaluate(0.2)));

  oracle::Gen gen(41);
  for (int t = 0; t < 10; ++t) {
    int n = gen.uniform(1, 8);
    std::vector<Node> ns{{"s", 1, true}};
    std::vector<double> ws, ps;
    for (int i = 1; i <= n; ++i) {
      ws.push_back(gen.weight());
      ns.push_back({"v" + std::to_string(i), ws.back(), false});
    }
    std::vector<Edge> es;
    for (int k = 1; k <= n + 1; ++k) {
      ps.push_back(gen.real(0.01, 0.6));
      es.push_back({"e" + std::to_string(k), k == 1 ? "s" : ns[k - 1].id, k == n + 1 ? "s" : ns[k].id, ps.back()});
    }
    Network net(ns, es);
    double f = oracle::saidi(net);
    CHECK(saidi_ring_general(ws, ps) == doctest::Approx(f).epsilon(1e-12));
    double sum = 0.0;
    for (int i = 1; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 1; ++j) {
        double r = ring_cutset_risk(ws, ps, i, j);
        CHECK(r == doctest::Approx(oracle::cut_risk(net, {"e" + std::to_string(i), "e" + std::to_string(j)}))
                       .epsilon(1e-12));
        sum += r;
      }
    CHECK(sum == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("ring cut-set risks, equal model") {
  double p = 0.1, q = 0.9;
  std::vector<double> w{1, 1}, ps{p, p, p};
  CHECK(ring_cutset_risk(w, ps, 1, 3) == doctest::Approx(2 * p * p));
  CHECK(ring_cutset_risk(w, ps, 1, 2) == doctest::Approx(q * p * p));
  CHECK(ring_cutset_risk(w, ps, 2, 2) == 0.0);
  // Nested pairs: the outer pair carries more risk.
  std::vector<double> w6(6, 1.0), p6(7, 0.05);
  for (int i = 2; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) CHECK(ring_cutset_risk(w6, p6, i, j) < ring_cutset_risk(w6, p6, i - 1, j + 1));
}

TEST_CASE("split ratios and balanced partitions") {
  CHECK(split_ring_ratio_exact(120, 2) == Rational(3782) / 14762);
  CHECK(split_ring_ratio(120, 2) == doctest::Approx(0.25623).epsilon(1e-4));
  CHECK(split_ring_ratio(50, 1) == doctest::Approx(1.0));
  CHECK(split_ring_ratio(1000000, 3) == doctest::Approx(1.0 / 9).epsilon(1e-4));
  CHECK(ring_second_coeff(10) == 220);

  CHECK(balanced_partition(7, 3) == std::vector<long>{3, 2, 2});
  CHECK(balanced_partition(6, 3) == std::vector<long>{2, 2, 2});
  long best = 1L << 40;
  for (long a = 0; a <= 7; ++a)
    for (long b = 0; a + b <= 7; ++b) best = std::min(best, a * a + b * b + (7 - a - b) * (7 - a - b));
  CHECK(best == 17);
}

TEST_CASE("pairwise second coefficient") {
  CHECK(pairwise_second_coeff(build_structure(ring(2))) == 6);
  // Brute force: pairs of nodes separated by each pair of edges on a small ring.
  for (int n = 1; n <= 5; ++n) {
    Network r = ring(n);
    oracle::Raw raw = oracle::raw(r);
    long pairs = 0;
    const int m = static_cast<int>(r.edge_count());
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        std::vector<char> alive(m, 1);
        alive[a] = alive[b] = 0;
        std::vector<int> label(raw.n);
        for (int v = 0; v < raw.n; ++v) label[v] = v;
        bool grew = true;
        while (grew) {
          grew = false;
          for (int e = 0; e < m; ++e) {
            auto [x, y] = raw.ends[e];
            if (alive[e] && label[x] != label[y]) {
              label[x] = label[y] = std::min(label[x], label[y]);
              grew = true;
            }
          }
        }
        for (int x = 0; x < raw.n; ++x)
          for (int y = x + 1; y < raw.n; ++y) pairs += label[x] != label[y];
      }
    CHECK(pairwise_second_coeff(build_structure(r)) == pairs);
  }
}

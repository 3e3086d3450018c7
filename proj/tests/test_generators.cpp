#include "doctest.h"
#include "oracle.hpp"
#include "saidi/analytic.hpp"
#include "saidi/errors.hpp"
#include "saidi/exact.hpp"
#include "saidi/generators.hpp"
#include "saidi/planner.hpp"
#include "saidi/risk.hpp"

using namespace saidi;

namespace {

std::map<std::string, int> spoke_counts(const Network& net) {
  std::map<std::string, int> out;
  for (const auto& e : net.edges()) ++out[e.u == "s" ? e.v : e.u];
  return out;
}

}  // namespace

TEST_CASE("elementary families") {
  CHECK(saidi_exact_polynomial(star(3)) == Polynomial({0, 3}));
  CHECK(saidi_exact_polynomial(path(2)) == Polynomial({0, 3, -1}));
  CHECK(saidi_exact_polynomial(ring(3)) == saidi_ring_equal(3));
  for (int n = 1; n <= 12; ++n) {
    for (const Network& net : {star(n), path(n), balanced_binary_tree(n), ring(n)}) {
      CHECK(net.is_connected());
      CHECK(net.consumer_count() == static_cast<std::size_t>(n));
      CHECK(net.source_ids() == std::vector<std::string>{"s"});
    }
    CHECK(ring(n).edge_count() == static_cast<std::size_t>(n + 1));
    CHECK(balanced_binary_tree(n).edge_count() == static_cast<std::size_t>(n));
    CHECK(saidi_tree(balanced_binary_tree(n)).evaluate(0.2) ==
          doctest::Approx(oracle::saidi(balanced_binary_tree(n, 0.2))).epsilon(1e-12));
  }
  // Heap order: v3 hangs below v1, v7 below v3.
  auto bt = balanced_binary_tree(7);
  CHECK(bt.edge("e3").u == "v1");
  CHECK(bt.edge("e3").v == "v3");
  CHECK(bt.edge("e7").u == "v3");
  CHECK(ring(4).edge("e5").u == "v4");
  CHECK(ring(4).edge("e5").v == "s");
  CHECK_THROWS_AS(star(0), ValidationError);
  CHECK_THROWS_AS(ring(0), ValidationError);
  // Deterministic output.
  CHECK(subdivide_equal(petersen(), 40).edges().back().id == subdivide_equal(petersen(), 40).edges().back().id);
  CHECK(grid(7, 4, GridPattern::third_row).edges().size() == grid(7, 4, GridPattern::third_row).edges().size());
}

TEST_CASE("k rings and k chains") {
  CHECK(saidi_exact_polynomial(k_rings(9, 1)) == saidi_ring_equal(9));
  auto st = build_structure(k_rings(10, 3));
  REQUIRE(st.chains.size() == 3);
  CHECK(st.chains[0].length() == 4);
  CHECK(st.chains[1].length() == 3);
  CHECK(st.chains[2].length() == 3);
  auto ch = build_structure(k_rings(10, 3, KRingsVariant::chains_to_hub));
  CHECK(ch.chains.size() == 3);
  CHECK(ch.network.node("h").weight == 1.0);
  CHECK(ch.network.consumer_count() == 10);
  // Ratio to the single ring: closed forms.
  Network r120 = ring(120, 0.001), k2 = k_rings(120, 2, KRingsVariant::rings_at_source, 0.001);
  Rational ratio = order2_coefficient(k2) / order2_coefficient(r120);
  CHECK(to_double(ratio) == doctest::Approx(0.2562).epsilon(1e-3));
  CHECK(ratio == split_ring_ratio_exact(120, 2));
  CHECK_THROWS_AS(k_rings(3, 5), ValidationError);
}

TEST_CASE("multi-star") {
  auto m = spoke_counts(multi_star(4, 6));
  CHECK(m == std::map<std::string, int>{{"v1", 2}, {"v2", 2}, {"v3", 1}, {"v4", 1}});
  auto one = spoke_counts(multi_star(5, 6));
  int doubled = 0;
  for (const auto& [v, c] : one) doubled += c == 2;
  CHECK(doubled == 1);
  CHECK(saidi_exact_polynomial(multi_star(5, 5)) == saidi_exact_polynomial(star(5)));
  CHECK_THROWS_AS(multi_star(5, 4), ValidationError);

  // Near p = 1 the multi-star beats every 2-connected net with the same n, m.
  oracle::Gen gen(111);
  for (auto [n, m] : {std::pair{3, 5}, {3, 6}, {4, 7}, {5, 8}}) {
    double f = oracle::saidi(multi_star(n, m, 0.95));
    for (int t = 0; t < 10; ++t) {
      Network other = gen.bridgeless(n + 1, m, true).with_uniform_p(0.95);
      CHECK(f <= oracle::saidi(other) + 1e-12);
    }
  }
}

TEST_CASE("cubic structures") {
  for (int h = 4; h <= 12; h += 2) {
    auto rep = design_rule_audit(two_connected_rings(h));
    CHECK(rep.three_regular);
    CHECK(rep.super_three_connected);
    CHECK(rep.hub_count == static_cast<std::size_t>(h));
  }
  CHECK_THROWS_AS(two_connected_rings(5), ValidationError);
  CHECK_THROWS_AS(two_connected_rings(2), ValidationError);
  auto pg = design_rule_audit(petersen());
  CHECK(pg.chain_count == 15);
  CHECK(pg.super_three_connected);
}

TEST_CASE("equal subdivision") {
  for (auto [base, r] : {std::pair{two_connected_rings(4), 2}, {two_connected_rings(6), 3}, {petersen(), 5}}) {
    const int hubs = 2 * r, chains = 3 * r;
    for (int c = 1; c <= 4; ++c) {
      Network net = subdivide_equal(base, hubs + chains * c);
      auto st = build_structure(net);
      for (const auto& ch : st.chains) CHECK(ch.length() == static_cast<std::size_t>(c));
      // m - n is preserved.
      CHECK(static_cast<long>(net.edge_count()) - static_cast<long>(net.node_count()) ==
            static_cast<long>(base.edge_count()) - static_cast<long>(base.node_count()));
      // 3-connected structure: only within-chain pairs at order 2.
      CHECK(order2_coefficient(net) == chains * binomial(c + 2, 3));
    }
    auto uneven = build_structure(subdivide_equal(base, hubs + chains * 2 + 1));
    std::size_t lo = 99, hi = 0;
    for (const auto& ch : uneven.chains) {
      lo = std::min(lo, ch.length());
      hi = std::max(hi, ch.length());
    }
    CHECK(hi - lo == 1);
  }
  CHECK_THROWS_AS(subdivide_equal(petersen(), 9), ValidationError);
}

TEST_CASE("grids") {
  // Two long lines: one ring through both (merged) sources, i.e. two loops.
  auto two = build_structure(grid(7, 2));
  CHECK(two.chains.size() == 2);
  auto basic = build_structure(grid(7, 4));
  auto middle = build_structure(grid(7, 4, GridPattern::middle_row));
  CHECK(middle.chains.size() > basic.chains.size());
  // Middle row splits each inner line into halves.
  std::size_t longest = 0;
  for (const auto& c : middle.chains) longest = std::max(longest, c.length());
  CHECK(longest <= 4);
  // Third-row hubs have three neighbours.
  auto third = build_structure(grid(10, 5, GridPattern::third_row));
  for (const auto& h : third.hubs)
    if (h != third.source) CHECK(third.network.degree(h) == 3);
  CHECK(grid_pattern_placement(10, 5, GridPattern::third_row) == GridPlacement{{3}, {6}, {3}, {6}});
  CHECK(grid_pattern_placement(9, 3, GridPattern::middle_row) == GridPlacement{{4}, {4}});
  CHECK(parse_grid_pattern("third_row") == GridPattern::third_row);
  CHECK_THROWS_AS(parse_grid_pattern("diagonal"), ValidationError);
  CHECK_THROWS_AS(grid(1, 3), ValidationError);
  Network g = grid(5, 3);
  CHECK(g.source_ids() == std::vector<std::string>{"r0c0", "r4c2"});
  CHECK(g.is_connected());
}

#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "saidi/errors.hpp"
#include "saidi/exact.hpp"
#include "saidi/generators.hpp"
#include "saidi/risk.hpp"

using namespace saidi;

namespace {

std::set<std::string> keys(const std::vector<CutSet>& cuts) {
  std::set<std::string> out;
  for (const auto& c : cuts) out.insert(c.key());
  return out;
}

std::set<std::string> keys(const std::vector<std::vector<std::string>>& cuts, std::size_t max_order = 99) {
  std::set<std::string> out;
  for (const auto& c : cuts) {
    if (c.size() > max_order) continue;
    out.insert(CutSet{c}.key());
  }
  return out;
}

}  // namespace

TEST_CASE("minimal cut set enumeration") {
  oracle::Gen gen(91);
  for (int t = 0; t < 40; ++t) {
    Network net = gen.connected(gen.uniform(2, 9), gen.uniform(2, 14));
    auto all = oracle::all_min_cuts(net);
    CHECK(keys(enumerate_all_min_cutsets(net)) == keys(all));
    for (int k = 1; k <= 3; ++k) CHECK(keys(enumerate_min_cutsets(net, k)) == keys(all, k));
    for (const auto& c : all) CHECK(is_minimal_cutset(net, CutSet{c}));
  }
  auto cuts = enumerate_min_cutsets(ring(3), 3);
  REQUIRE(cuts.size() == 6);
  CHECK(cuts[0].key() == "e1+e2");
  CHECK(!is_minimal_cutset(ring(3), CutSet{{"e1"}}));
  CHECK(!is_minimal_cutset(ring(3), CutSet{{"e1", "e2", "e3"}}));
  CHECK_THROWS_AS(enumerate_min_cutsets(ring(3), 4), ValidationError);
}

TEST_CASE("cut set risks") {
  oracle::Gen gen(92);
  for (int t = 0; t < 30; ++t) {
    Network net = gen.connected(gen.uniform(2, 8), gen.uniform(2, 12));
    double total = 0.0;
    for (const auto& c : oracle::all_min_cuts(net)) {
      RiskRecord r = ric(net, CutSet{c});
      CHECK(r.reach_exact);
      CHECK(r.risk == doctest::Approx(oracle::cut_risk(net, c)).epsilon(1e-10).scale(1.0));
      CHECK(r.risk == doctest::Approx(r.reach_prob * r.fail_prob * r.disconnected_weight));
      double reach = reach_probability(net, CutSet{c});
      CHECK(reach == doctest::Approx(r.reach_prob));
      CHECK(reach_probability_truncated(net, CutSet{c}, static_cast<int>(net.edge_count())) ==
            doctest::Approx(reach).epsilon(1e-10));
      total += r.risk;
    }
    double f = oracle::saidi(net);
    CHECK(total == doctest::Approx(f).epsilon(1e-10).scale(1.0));
    CHECK(saidi_via_risks(net) == doctest::Approx(f).epsilon(1e-10).scale(1.0));
    for (int k = 1; k <= 3; ++k)
      CHECK(saidi_via_risks(net, k) == doctest::Approx(saidi_korder(net, k)).epsilon(1e-10).scale(1.0));
  }
  CHECK_THROWS_AS(ric(ring(3), CutSet{{"e1"}}), ValidationError);
}

TEST_CASE("large source sides fall back to a truncated reach") {
  oracle::Gen gen(93);
  Network net = gen.bridgeless(16, 48).with_uniform_p(0.05);
  std::string leaf;
  std::size_t best = 99;
  for (const auto& v : net.nodes())
    if (!v.is_source && net.degree(v.id) < best) {
      best = net.degree(v.id);
      leaf = v.id;
    }
  CutSet x;
  for (const auto& e : net.edges())
    if ((e.u == leaf) != (e.v == leaf)) x.edges.push_back(e.id);
  std::sort(x.edges.begin(), x.edges.end(), NaturalLess{});
  REQUIRE(is_minimal_cutset(net, x));
  RiskRecord r = ric(net, x);
  CHECK(!r.reach_exact);
  int order = 3 - static_cast<int>(x.order());
  CHECK(r.reach_prob == doctest::Approx(reach_probability_truncated(net, x, std::max(order, 0))));
  CHECK(r.disconnected_weight == net.node(leaf).weight);
}

TEST_CASE("structural cut sets and risks") {
  oracle::Gen gen(94);
  for (int t = 0; t < 25; ++t) {
    Network net = gen.bridgeless(gen.uniform(3, 9), gen.uniform(4, 13));
    auto st = build_structure(net);
    Network hubs = st.hub_network();
    auto want = oracle::all_min_cuts(hubs);
    CHECK(keys(enumerate_structural_cutsets(st, 0)) == keys(want));
    CHECK(keys(enumerate_structural_cutsets(st, 2)) == keys(want, 2));
    double total = 0.0;
    for (const auto& x : want) {
      RiskRecord r = structural_risk(st, x, RiskMode::exact);
      CHECK(r.risk == doctest::Approx(oracle::structural_risk(st, x)).epsilon(1e-10).scale(1.0));
      total += r.risk;
    }
    for (std::size_t c = 0; c < st.chains.size(); ++c) {
      RiskRecord r = inter_risk(st, st.chains[c].id, RiskMode::exact);
      CHECK(r.kind == RiskKind::inter_chain);
      CHECK(r.risk == doctest::Approx(oracle::inter_risk(st, c)).epsilon(1e-10).scale(1.0));
      total += r.risk;
    }
    double f = oracle::saidi(net);
    CHECK(total == doctest::Approx(f).epsilon(1e-10).scale(1.0));
    CHECK(saidi_structural(net, 0) == doctest::Approx(f).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("approximate structural and inter-chain risks") {
  Network net = subdivide_equal(two_connected_rings(4), 16, 0.001);
  auto st = build_structure(net);
  for (const auto& x : enumerate_structural_cutsets(st, 0)) {
    double exact = structural_risk(st, x.edges, RiskMode::exact).risk;
    double approx = structural_risk(st, x.edges, RiskMode::approx).risk;
    CHECK(approx == doctest::Approx(exact).epsilon(0.02));
  }
  for (const auto& c : st.chains) {
    double exact = inter_risk(st, c.id, RiskMode::exact).risk;
    double approx = inter_risk(st, c.id, RiskMode::approx).risk;
    CHECK(approx == doctest::Approx(exact).epsilon(0.02));
  }
  // Equal model, order-2 ring term p^2 C(c+2, 3).
  auto ring_st = build_structure(ring(10, 0.01));
  CHECK(inter_risk(ring_st, ring_st.chains[0].id, RiskMode::approx).risk == doctest::Approx(220 * 1e-4));
  CHECK_THROWS_AS(structural_risk(st, {st.chains[0].id}, RiskMode::exact), ValidationError);
}

TEST_CASE("bridge-corrected inter-chain risk") {
  // Ring hanging below a bridge s - a.
  Network net({{"s", 1, true}, {"a", 1, false}, {"b", 1, false}, {"c", 1, false}},
              {{"e1", "s", "a", 0.1}, {"e2", "a", "b", 0.1}, {"e3", "b", "c", 0.1}, {"e4", "c", "a", 0.1}});
  auto st = build_structure(net, {.allow_bridges = true});
  std::size_t loop = st.chain_of_edge("e2");
  double plain = inter_risk(st, st.chains[loop].id, RiskMode::approx).risk;
  double corrected = inter_risk(st, st.chains[loop].id, RiskMode::approx, true).risk;
  CHECK(corrected == doctest::Approx(plain * 0.9));
  CHECK(inter_risk(st, st.chains[loop].id, RiskMode::exact).risk ==
        doctest::Approx(oracle::inter_risk(st, loop)).epsilon(1e-12));
}

TEST_CASE("top risks") {
  auto p = top_risks(path(4), 3, 0.1);
  REQUIRE(p.size() == 3);
  CHECK(p[0].cutset.key() == "e1");
  CHECK(p[0].risk == doctest::Approx(0.4));
  CHECK(p[0].kind == RiskKind::structural);

  auto r = top_risks(ring(6), 1, 0.1);
  REQUIRE(r.size() == 1);
  CHECK(r[0].cutset.key() == "e1+e7");
  CHECK(r[0].kind == RiskKind::inter_chain);
  CHECK(r[0].risk == doctest::Approx(6 * 0.01));

  auto all = top_risks(subdivide_equal(petersen(), 25), 1000, 0.05);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(all[i - 1].risk >= all[i].risk);
    if (all[i - 1].risk == all[i].risk) CHECK(natural_less(all[i - 1].cutset.key(), all[i].cutset.key()));
  }
  CHECK(top_risks(ring(3), 0).empty());
}

TEST_CASE("order-2 coefficient") {
  oracle::Gen gen(95);
  for (int t = 0; t < 25; ++t) {
    Network net = gen.bridgeless(gen.uniform(3, 10), gen.uniform(3, 15));
    CHECK(order2_coefficient(net) == saidi_exact_polynomial(net).coeff(2));
  }
  CHECK(order2_coefficient(ring(10)) == 220);
  CHECK(order2_coefficient(subdivide_equal(petersen(), 40)) == saidi_exact_polynomial(subdivide_equal(petersen(), 40)).coeff(2));
}

#include "doctest.h"
#include "oracle.hpp"
#include "saidi/analytic.hpp"
#include "saidi/errors.hpp"
#include "saidi/generators.hpp"
#include "saidi/structure.hpp"

using namespace saidi;

namespace {

// Chain as a stand-alone network: hub u = "u", hub v = "v", interior "c1".. .
Network chain_net(const std::vector<double>& p, const std::vector<double>& w, bool u_src, bool v_src) {
  std::vector<Node> ns{{"u", 1, u_src}, {"v", 1, v_src}};
  for (std::size_t i = 0; i < w.size(); ++i) ns.push_back({"c" + std::to_string(i + 1), w[i], false});
  std::vector<Edge> es;
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::string a = k == 0 ? "u" : "c" + std::to_string(k);
    std::string b = k == w.size() ? "v" : "c" + std::to_string(k + 1);
    es.push_back({"e" + std::to_string(k + 1), a, b, p[k]});
  }
  return Network(ns, es);
}

}  // namespace

TEST_CASE("structure graph of small families") {
  auto st = build_structure(ring(4));
  CHECK(st.hubs == std::vector<std::string>{"s"});
  REQUIRE(st.chains.size() == 1);
  CHECK(st.chains[0].is_loop());
  CHECK(st.chains[0].length() == 4);
  CHECK(st.chains[0].interior == std::vector<std::string>{"v1", "v2", "v3", "v4"});
  CHECK(st.position_of("v3") == std::pair<std::size_t, std::size_t>{0, 3});

  auto kc = build_structure(k_rings(9, 3, KRingsVariant::chains_to_hub));
  CHECK(kc.hubs.size() == 2);
  CHECK(kc.chains.size() == 3);
  std::size_t interior = 0;
  for (const auto& c : kc.chains) interior += c.length();
  CHECK(interior == 8);

  auto pg = build_structure(petersen());
  CHECK(pg.hubs.size() == 10);
  CHECK(pg.chains.size() == 15);
  for (const auto& c : pg.chains) CHECK(c.length() == 0);

  auto sub = build_structure(subdivide_equal(petersen(), 40));
  CHECK(sub.hubs.size() == 10);
  CHECK(sub.chains.size() == 15);
  std::size_t lo = 99, hi = 0;
  for (const auto& c : sub.chains) {
    lo = std::min(lo, c.length());
    hi = std::max(hi, c.length());
    CHECK(sub.chain_fail_prob(sub.chain_index(c.id)) ==
          doctest::Approx(1.0 - std::pow(0.9, static_cast<double>(c.length() + 1))));
  }
  CHECK(hi - lo <= 1);

  CHECK_THROWS_AS(build_structure(path(3)), ValidationError);
  auto bridged = build_structure(path(3), {.allow_bridges = true});
  CHECK(bridged.hubs == std::vector<std::string>{"s", "v3"});
  CHECK(bridged.chains.size() == 1);

  // Sources are merged and self-loops dropped.
  Network two_src({{"s", 1, true}, {"t", 1, true}, {"a", 1, false}},
                  {{"e1", "s", "a", 0.1}, {"e2", "a", "t", 0.1}, {"e3", "a", "a", 0.1}});
  auto ts = build_structure(two_src);
  CHECK(ts.hubs.size() == 1);
  CHECK(ts.chains.size() == 1);
  CHECK(ts.network.edge_count() == 2);
}

TEST_CASE("structure graph covers every edge once") {
  oracle::Gen gen(71);
  for (int t = 0; t < 30; ++t) {
    Network net = gen.bridgeless(gen.uniform(3, 12), 0);
    Network more = gen.bridgeless(gen.uniform(3, 12), gen.uniform(3, 16));
    for (const Network* n : {&net, &more}) {
      auto st = build_structure(*n);
      std::size_t edges = 0;
      for (const auto& c : st.chains) {
        edges += c.edges.size();
        CHECK(c.edges.size() == c.interior.size() + 1);
        for (const auto& v : c.interior) CHECK(st.network.degree(v) == 2);
      }
      CHECK(edges == st.network.edge_count());
      for (const auto& h : st.hubs) CHECK((h == st.source || st.network.degree(h) != 2));
    }
  }
}

TEST_CASE("chain scores match small networks") {
  oracle::Gen gen(72);
  for (int t = 0; t < 20; ++t) {
    int c = gen.uniform(0, 6);
    std::vector<double> p, w;
    for (int i = 0; i <= c; ++i) p.push_back(gen.real(0.01, 0.6));
    for (int i = 0; i < c; ++i) w.push_back(gen.weight());
    // Ring: both hubs powered. Path from u: only u powered.
    CHECK(chain_ring(p, w) == doctest::Approx(oracle::saidi(chain_net(p, w, true, true))).epsilon(1e-12));
    // Hub v is a consumer in chain_net; drop its contribution by isolating the last edge.
    std::vector<double> cut = p;
    cut.back() = 1.0;
    Network from_u = chain_net(cut, w, true, false);
    double expect = oracle::saidi(from_u) - 1.0;  // v is always lost
    CHECK(chain_path_from_u(p, w) == doctest::Approx(expect).epsilon(1e-12));
    std::vector<double> rp(p.rbegin(), p.rend()), rw(w.rbegin(), w.rend());
    CHECK(chain_path_from_v(p, w) == doctest::Approx(chain_path_from_u(rp, rw)).epsilon(1e-12));
  }
}

TEST_CASE("boundary connection probabilities") {
  oracle::Gen gen(73);
  for (int t = 0; t < 20; ++t) {
    Network net = gen.bridgeless(gen.uniform(4, 9), gen.uniform(6, 13));
    auto st = build_structure(net);
    for (std::size_t c = 0; c < st.chains.size(); ++c) {
      const Chain& ch = st.chains[c];
      if (ch.is_loop()) continue;
      oracle::Raw r = oracle::raw(st.network);
      std::vector<char> in_chain(r.ends.size(), 0);
      for (const auto& e : ch.edges) in_chain[r.edge_at[e]] = 1;
      int u = r.node_at[ch.u], v = r.node_at[ch.v];
      auto prob = [&](bool want_u, bool want_v) {
        return oracle::expect(r, [&](const std::vector<char>& alive) {
          std::vector<char> a = alive;
          for (std::size_t e = 0; e < a.size(); ++e)
            if (in_chain[e]) a[e] = 0;
          auto on = oracle::powered(r, a);
          return (static_cast<bool>(on[u]) == want_u && static_cast<bool>(on[v]) == want_v) ? 1.0 : 0.0;
        });
      };
      // The chain edges are summed out, so the oracle already marginalizes them.
      BoundaryProbs b = boundary_connection_probs(st, c);
      CHECK(b.p2 == doctest::Approx(prob(true, true)).epsilon(1e-10));
      CHECK(b.p1u == doctest::Approx(prob(true, false)).epsilon(1e-10));
      CHECK(b.p1v == doctest::Approx(prob(false, true)).epsilon(1e-10));
      CHECK(b.p0 == doctest::Approx(prob(false, false)).epsilon(1e-10));
    }
  }
}

TEST_CASE("ring-path formula") {
  oracle::Gen gen(74);
  for (int t = 0; t < 40; ++t) {
    Network net = gen.bridgeless(gen.uniform(2, 10), gen.uniform(2, 15));
    CHECK(ring_path_saidi(net) == doctest::Approx(oracle::saidi(net)).epsilon(1e-10));
  }
  CHECK(ring_path_saidi(ring(5, 0.2)) == doctest::Approx(saidi_ring_equal(5).evaluate(0.2)).epsilon(1e-12));
  CHECK(ring_path_saidi(petersen(0.3)) == doctest::Approx(oracle::saidi(petersen(0.3))).epsilon(1e-10));
  CHECK_THROWS_AS(ring_path_saidi(path(2)), ValidationError);
}

TEST_CASE("bridge decomposition") {
  oracle::Gen gen(75);
  for (int t = 0; t < 40; ++t) {
    Network net = gen.connected(gen.uniform(2, 10), gen.uniform(2, 14));
    auto d = bridge_decompose(net);
    CHECK(d.saidi == doctest::Approx(oracle::saidi(net)).epsilon(1e-10));
  }
  // A path splits into one block per edge.
  auto d = bridge_decompose(path(3, 0.1));
  CHECK(d.saidi == doctest::Approx(saidi_path_equal(3).evaluate(0.1)).epsilon(1e-12));
  // Unreachable weight is always lost.
  Network islands({{"s", 1, true}, {"a", 1, false}, {"b", 2.5, false}}, {{"e1", "s", "a", 0.2}});
  auto di = bridge_decompose(islands);
  CHECK(di.unreachable_weight == 2.5);
  CHECK(di.saidi == doctest::Approx(2.7));
}

TEST_CASE("partition formula") {
  oracle::Gen gen(76);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::string> side;
    Network net = oracle::glued(gen, gen.uniform(3, 6), gen.uniform(3, 6), side);
    CHECK(partition_saidi(net, {"x"}, side) == doctest::Approx(oracle::saidi(net)).epsilon(1e-10));
  }
  // Two chains between the source and hub h.
  Network kc = k_rings(7, 2, KRingsVariant::chains_to_hub, 0.2);
  auto st = build_structure(kc);
  CHECK(partition_saidi(kc, {"h"}, st.chains[0].edges) == doctest::Approx(oracle::saidi(kc)).epsilon(1e-12));
  // Sides that share a non-cut node are rejected.
  CHECK_THROWS_AS(partition_saidi(ring(3), {}, {"e1"}), ValidationError);
}

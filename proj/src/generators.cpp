#include "saidi/generators.hpp"

#include <cmath>

#include "saidi/analytic.hpp"

namespace saidi {

namespace {

std::string v(int i) { return i == 0 ? "s" : "v" + std::to_string(i); }

struct Builder {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  double p;

  explicit Builder(double p_) : p(p_) {}
  void node(const std::string& id, bool source = false) { nodes.push_back({id, 1.0, source}); }
  void edge(const std::string& a, const std::string& b) {
    edges.push_back({"e" + std::to_string(edges.size() + 1), a, b, p});
  }
  Network build() { return Network(std::move(nodes), std::move(edges)); }
};

Builder consumers(int n, double p) {
  if (n < 1) throw ValidationError("generator: n must be at least 1");
  Builder b(p);
  b.node("s", true);
  for (int i = 1; i <= n; ++i) b.node(v(i));
  return b;
}

}  // namespace

Network star(int n, double p) {
  Builder b = consumers(n, p);
  for (int i = 1; i <= n; ++i) b.edge("s", v(i));
  return b.build();
}

Network path(int n, double p) {
  Builder b = consumers(n, p);
  for (int i = 1; i <= n; ++i) b.edge(v(i - 1), v(i));
  return b.build();
}

Network balanced_binary_tree(int n, double p) {
  Builder b = consumers(n, p);
  for (int i = 1; i <= n; ++i) b.edge(v((i + 1) / 2 - 1), v(i));
  return b.build();
}

Network ring(int n, double p) {
  Builder b = consumers(n, p);
  for (int i = 1; i <= n; ++i) b.edge(v(i - 1), v(i));
  b.edge(v(n), "s");
  return b.build();
}

Network k_rings(int n, int k, KRingsVariant variant, double p) {
  if (k < 1) throw ValidationError("k_rings: k must be at least 1");
  Builder b = consumers(n, p);
  int next = 1;
  if (variant == KRingsVariant::rings_at_source) {
    if (n < k) throw ValidationError("k_rings: need at least one consumer per ring");
    for (long c : balanced_partition(n, k)) {
      std::string prev = "s";
      for (long i = 0; i < c; ++i, ++next) {
        b.edge(prev, v(next));
        prev = v(next);
      }
      b.edge(prev, "s");
    }
    return b.build();
  }
  // The last consumer acts as the hub.
  b.nodes.back().id = "h";
  for (long c : balanced_partition(n - 1, k)) {
    std::string prev = "s";
    for (long i = 0; i < c; ++i, ++next) {
      b.edge(prev, v(next));
      prev = v(next);
    }
    b.edge(prev, "h");
  }
  return b.build();
}

Network multi_star(int n, int m, double p) {
  if (m < n) throw ValidationError("multi_star: m must be at least n");
  Builder b = consumers(n, p);
  auto mult = balanced_partition(m, n);
  for (int i = 1; i <= n; ++i)
    for (long r = 0; r < mult[i - 1]; ++r) b.edge("s", v(i));
  return b.build();
}

namespace {

Builder hubs(int h, double p) {
  Builder b(p);
  for (int i = 0; i < h; ++i) b.node("h" + std::to_string(i), i == 0);
  return b;
}

std::string hub(int i) { return "h" + std::to_string(i); }

}  // namespace

Network two_connected_rings(int h, double p) {
  if (h < 4 || h % 2 != 0) throw ValidationError("two_connected_rings: h must be even and at least 4");
  Builder b = hubs(h, p);
  for (int i = 0; i < h; ++i) b.edge(hub(i), hub((i + 1) % h));
  for (int i = 0; i < h / 2; ++i) b.edge(hub(i), hub(i + h / 2));
  return b.build();
}

Network petersen(double p) {
  Builder b = hubs(10, p);
  for (int i = 0; i < 5; ++i) b.edge(hub(i), hub((i + 1) % 5));
  for (int i = 0; i < 5; ++i) b.edge(hub(i), hub(5 + i));
  for (int i = 0; i < 5; ++i) b.edge(hub(5 + i), hub(5 + (i + 2) % 5));
  return b.build();
}

Network subdivide_equal(const Network& structure, int total_nodes, double p) {
  const int h = static_cast<int>(structure.node_count());
  if (total_nodes < h) throw ValidationError("subdivide_equal: total_nodes is below the hub count");
  if (structure.edge_count() == 0) throw ValidationError("subdivide_equal: structure has no edges");
  auto sizes = balanced_partition(total_nodes - h, static_cast<long>(structure.edge_count()));
  Builder b(p);
  for (const auto& n : structure.nodes()) b.nodes.push_back(n);
  int next = 1;
  for (std::size_t e = 0; e < structure.edge_count(); ++e) {
    const Edge& src = structure.edges()[e];
    std::string prev = src.u;
    for (long i = 0; i < sizes[e]; ++i, ++next) {
      std::string id = "n" + std::to_string(next);
      b.node(id);
      b.edge(prev, id);
      prev = id;
    }
    b.edge(prev, src.v);
  }
  return b.build();
}

GridPattern parse_grid_pattern(const std::string& name) {
  if (name == "basic") return GridPattern::basic;
  if (name == "middle_row") return GridPattern::middle_row;
  if (name == "third_row") return GridPattern::third_row;
  if (name == "custom") return GridPattern::custom;
  throw ValidationError("unknown grid pattern " + name);
}

GridPlacement grid_pattern_placement(int rows, int cols, GridPattern pattern) {
  if (rows < 2 || cols < 2) throw ValidationError("grid: rows and cols must be at least 2");
  GridPlacement out(cols - 1);
  if (pattern == GridPattern::basic || pattern == GridPattern::custom) return out;
  if (rows < 3) throw ValidationError("grid: patterns need at least one interior row");
  for (int g = 0; g < cols - 1; ++g) {
    int r = (rows - 1) / 2;
    if (pattern == GridPattern::third_row) {
      double frac = g % 2 == 0 ? 1.0 / 3.0 : 2.0 / 3.0;
      r = static_cast<int>(std::lround((rows - 1) * frac));
      r = std::min(std::max(r, 1), rows - 2);
    }
    out[g] = {r};
  }
  return out;
}

Network grid(int rows, int cols, GridPattern pattern, const GridPlacement& custom, double p) {
  GridPlacement place = pattern == GridPattern::custom ? custom : grid_pattern_placement(rows, cols, pattern);
  grid_score(rows, cols, place);  // validates
  auto id = [](int r, int c) { return "r" + std::to_string(r) + "c" + std::to_string(c); };
  Builder b(p);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      b.node(id(r, c), (r == 0 && c == 0) || (r == rows - 1 && c == cols - 1));
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r + 1 < rows; ++r) b.edge(id(r, c), id(r + 1, c));
  for (int c = 0; c + 1 < cols; ++c) {
    b.edge(id(0, c), id(0, c + 1));
    b.edge(id(rows - 1, c), id(rows - 1, c + 1));
    for (int r : place[c]) b.edge(id(r, c), id(r, c + 1));
  }
  return b.build();
}

}  // namespace saidi

#pragma once

#include <string>
#include <vector>

#include "saidi/network.hpp"
#include "saidi/planner.hpp"

namespace saidi {

// Unit weights, one source "s", consumers "v1".., edges "e1".., every
// p_fail = p (override later with with_uniform_p).

Network star(int n, double p = 0.1);
Network path(int n, double p = 0.1);
/// Heap order: v_i hangs below v_{floor((i+1)/2) - 1}, with v_0 = s.
Network balanced_binary_tree(int n, double p = 0.1);
/// Edge e_k joins v_{k-1} and v_k, with v_0 = v_{n+1} = s.
Network ring(int n, double p = 0.1);

enum class KRingsVariant { rings_at_source, chains_to_hub };
/// n consumers in k balanced rings through the source, or k balanced chains
/// between the source and one hub "h" (the hub counts as a consumer).
Network k_rings(int n, int k, KRingsVariant variant = KRingsVariant::rings_at_source, double p = 0.1);

/// Source with n neighbours, spoke multiplicities balanced_partition(m, n).
Network multi_star(int n, int m, double p = 0.1);

/// Cubic structure graphs on hubs "h0".. with h0 the source: the Möbius
/// ladder on h hubs (h even >= 4; h = 4 is K4, h = 6 is K_{3,3}) and the
/// Petersen graph.
Network two_connected_rings(int h, double p = 0.1);
Network petersen(double p = 0.1);

/// Replaces every edge by a chain; total_nodes - (hub count) interior nodes
/// are spread by balanced_partition in edge order. Nodes "n1".., edges "e1"..
Network subdivide_equal(const Network& structure, int total_nodes, double p = 0.1);

enum class GridPattern { basic, middle_row, third_row, custom };
GridPattern parse_grid_pattern(const std::string& name);

/// Row choice of the named patterns, one row per gap.
GridPlacement grid_pattern_placement(int rows, int cols, GridPattern pattern);
/// See GridPlacement for the geometry. Node ids r<i>c<j>.
Network grid(int rows, int cols, GridPattern pattern = GridPattern::basic, const GridPlacement& custom = {},
             double p = 0.1);

}  // namespace saidi

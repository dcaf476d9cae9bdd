#pragma once

#include <string>
#include <vector>

#include "pstab/gog.hpp"

namespace pstab {

// Small graphs of groups used by tests, the harness and the CLI.

/// Z/4 *_{Z/2} Z/6: two vertices, one geometric edge, both inclusions onto the
/// unique subgroup of order 2.
GogPtr sl2z_gog();
/// One vertex Z/n with `loops` loop edges, edge groups Z/n, identity inclusions.
GogPtr free_times_cyclic_gog(std::size_t loops, std::size_t n);
/// Z/a * Z/b: one edge with trivial edge group.
GogPtr free_product_gog(std::size_t a, std::size_t b);
/// Vertices Z/6 and Z/2 joined by an edge with group Z/2, plus a loop at Z/6
/// with group Z/3 whose two inclusions differ (x -> 2x and x -> 4x).
GogPtr two_edge_loop_gog();
/// One vertex with the given group and no edges.
GogPtr single_vertex_gog(const GroupPtr& g);

/// Names accepted by gog_by_name.
std::vector<std::string> zoo_names();
/// "sl2z", "f2xz2", "f2xz3", "f1xz2", "z2*z3", "two-edge-loop".
GogPtr gog_by_name(const std::string& name);

}  // namespace pstab

#include "pstab/schreier.hpp"

#include <numeric>

#include "pstab/zoo.hpp"

namespace pstab {
namespace {

Perm power(const Perm& p, std::size_t k) {
  Perm out = Perm::identity(p.degree());
  for (std::size_t i = 0; i < k; ++i) out = p * out;
  return out;
}

void check_shapes(const SchreierGraph& a, const AlmostAutomorphism& alpha) {
  a.validate();
  if (alpha.vertex_map.degree() != a.vertices) throw DegreeMismatch("vertex map has the wrong size");
  if (alpha.edge_map.degree() != a.edge_count()) throw DegreeMismatch("edge map has the wrong size");
  if (alpha.n == 0) throw DegreeMismatch("order must be positive");
}

}  // namespace

void SchreierGraph::validate() const {
  for (const Perm& p : labels) {
    if (p.degree() != vertices) throw DegreeMismatch("label permutation has the wrong degree");
  }
}

Perm induced_edge_map(const SchreierGraph& a, const Perm& vertex_map) {
  std::vector<Point> img(a.edge_count());
  for (std::size_t e = 0; e < img.size(); ++e) img[e] = Point(a.edge_id(a.label(e), vertex_map[a.origin(e)]));
  return Perm(std::move(img));
}

std::vector<std::size_t> defect_edges(const SchreierGraph& a, const AlmostAutomorphism& alpha) {
  check_shapes(a, alpha);
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < a.edge_count(); ++e) {
    const std::size_t f = alpha.edge_map[Point(e)];
    const bool ok = a.label(f) == a.label(e) && a.origin(f) == alpha.vertex_map[a.origin(e)] &&
                    a.terminus(f) == alpha.vertex_map[a.terminus(e)];
    if (!ok) out.push_back(e);
  }
  return out;
}

std::vector<Point> order_defect_vertices(const AlmostAutomorphism& alpha) {
  const Perm p = power(alpha.vertex_map, alpha.n);
  std::vector<Point> out;
  for (Point v = 0; v < p.degree(); ++v) {
    if (p[v] != v) out.push_back(v);
  }
  return out;
}

bool is_strict(const SchreierGraph& a, const AlmostAutomorphism& alpha) {
  check_shapes(a, alpha);
  for (std::size_t e = 0; e < a.edge_count(); ++e) {
    const std::size_t f = alpha.edge_map[Point(e)];
    if (a.label(f) != a.label(e) || a.origin(f) != alpha.vertex_map[a.origin(e)]) return false;
  }
  return true;
}

bool is_exact(const SchreierGraph& a, const AlmostAutomorphism& alpha) {
  return defect_edges(a, alpha).empty() && order_defect_vertices(alpha).empty();
}

std::size_t order_of(const Perm& p) {
  std::size_t out = 1;
  const auto type = cycle_type(p);
  for (std::size_t k = 1; k < type.size(); ++k) {
    if (type[k] > 0) out = std::lcm(out, k);
  }
  return out;
}

Normalized normalize_weak(const SchreierGraph& a, const AlmostAutomorphism& alpha) {
  check_shapes(a, alpha);
  Normalized out{alpha, 0};
  out.alpha.edge_map = induced_edge_map(a, alpha.vertex_map);
  out.edits = hamming(alpha.edge_map, out.alpha.edge_map);
  return out;
}

Conversion to_almost_action(const SchreierGraph& a, const AlmostAutomorphism& alpha) {
  if (!is_strict(a, alpha)) throw PreconditionFailed("almost-automorphism is not strict");
  const std::size_t m = a.vertices, n = alpha.n;
  // Keep alpha on its cycles whose length divides n.
  std::vector<Point> gen(m);
  std::iota(gen.begin(), gen.end(), Point{0});
  std::vector<bool> seen(m, false);
  for (Point v = 0; v < m; ++v) {
    if (seen[v]) continue;
    std::vector<Point> cycle;
    for (Point x = v; !seen[x]; x = alpha.vertex_map[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    if (n % cycle.size() != 0) continue;
    for (Point x : cycle) gen[x] = alpha.vertex_map[x];
  }
  Conversion out{trivial_almost_action(free_times_cyclic_gog(a.rank(), n), m), Perm(std::move(gen)), 0};
  const GroupPtr& g = out.action.gog->vertex_groups[0];
  if (n > 1) {
    out.action.vertex_actions[0] = FiniteAction::from_generators(g, m, {{1, out.vertex_generator}});
  }
  out.action.stable_letters = a.labels;
  out.edits = hamming(alpha.vertex_map, out.vertex_generator);
  return out;
}

std::pair<SchreierGraph, AlmostAutomorphism> from_almost_action(const AlmostAction& rho) {
  const GroupPtr& g = rho.gog->vertex_groups[0];
  SchreierGraph a{rho.degree, rho.stable_letters};
  const Perm v = g->order() > 1 ? rho.vertex_actions[0](1) : Perm::identity(rho.degree);
  AlmostAutomorphism alpha{v, induced_edge_map(a, v), g->order()};
  return {std::move(a), std::move(alpha)};
}

RepairReport repair(const SchreierGraph& a, const AlmostAutomorphism& alpha, const StabilizeOptions& options) {
  check_shapes(a, alpha);
  RepairReport r;
  r.input_defect_edges = defect_edges(a, alpha).size();
  r.input_order_defects = order_defect_vertices(alpha).size();
  const Normalized norm = normalize_weak(a, alpha);
  r.normalize_edits = norm.edits;
  const Conversion conv = to_almost_action(a, norm.alpha);
  r.conversion_edits = conv.edits;
  r.correction = stabilize(conv.action, options);
  std::tie(r.graph, r.alpha) = from_almost_action(r.correction.output);
  if (!is_exact(r.graph, r.alpha)) throw InternalInvariantBroken("repaired automorphism is not exact");
  for (std::size_t l = 0; l < a.rank(); ++l) r.edge_diff += 2 * hamming(a.labels[l], r.graph.labels[l]);
  r.vertex_diff = hamming(alpha.vertex_map, r.alpha.vertex_map);
  r.order = order_of(r.alpha.vertex_map);
  return r;
}

}  // namespace pstab

#pragma once

#include <cstddef>
#include <vector>

#include "pstab/correct.hpp"
#include "pstab/gog.hpp"
#include "pstab/perm.hpp"

namespace pstab {

// A finite Schreier graph of F_d on {0, ..., m-1}: one permutation per label.
// Edge ids are label * m + origin; edge (l, v) runs from v to labels[l](v).
struct SchreierGraph {
  std::size_t vertices = 0;
  std::vector<Perm> labels;

  std::size_t rank() const { return labels.size(); }
  std::size_t edge_count() const { return vertices * labels.size(); }
  std::size_t edge_id(std::size_t label, Point origin) const { return label * vertices + origin; }
  std::size_t label(std::size_t edge) const { return edge / vertices; }
  Point origin(std::size_t edge) const { return Point(edge % vertices); }
  Point terminus(std::size_t edge) const { return labels[label(edge)][origin(edge)]; }

  /// Throws DegreeMismatch unless every label is a permutation of the vertices.
  void validate() const;
  friend bool operator==(const SchreierGraph&, const SchreierGraph&) = default;
};

// A pair of bijections on vertices and edges with a target order n.
struct AlmostAutomorphism {
  Perm vertex_map;
  Perm edge_map;
  std::size_t n = 1;

  friend bool operator==(const AlmostAutomorphism&, const AlmostAutomorphism&) = default;
};

/// The edge map induced by a vertex map: (l, v) -> (l, alpha(v)).
Perm induced_edge_map(const SchreierGraph& a, const Perm& vertex_map);

/// Edges where one of c(alpha e) = c(e), o(alpha e) = alpha(o e),
/// t(alpha e) = alpha(t e) fails.
std::vector<std::size_t> defect_edges(const SchreierGraph& a, const AlmostAutomorphism& alpha);
/// Vertices with alpha^n(v) != v.
std::vector<Point> order_defect_vertices(const AlmostAutomorphism& alpha);
/// Label and origin conditions hold on every edge.
bool is_strict(const SchreierGraph& a, const AlmostAutomorphism& alpha);
/// All three edge conditions on every edge and alpha^n = id.
bool is_exact(const SchreierGraph& a, const AlmostAutomorphism& alpha);
/// Order of a permutation (lcm of cycle lengths).
std::size_t order_of(const Perm& p);

struct Normalized {
  AlmostAutomorphism alpha;
  std::size_t edits = 0;  // edges whose image changed
};

/// Replace alpha(e) by the out-edge at alpha(o(e)) with label c(e).
Normalized normalize_weak(const SchreierGraph& a, const AlmostAutomorphism& alpha);

struct Conversion {
  AlmostAction action;      // over F_d x Z/n (one vertex, d loops)
  Perm vertex_generator;    // image of 1 in Z/n
  std::size_t edits = 0;    // vertices where it differs from alpha
};

/// Vertex Z/n-action: alpha on its cycles of length dividing n, identity
/// elsewhere. Stable letters are the label permutations.
Conversion to_almost_action(const SchreierGraph& a, const AlmostAutomorphism& alpha);

/// Reads (A', alpha') back from an action over F_d x Z/n.
std::pair<SchreierGraph, AlmostAutomorphism> from_almost_action(const AlmostAction& rho);

struct RepairReport {
  SchreierGraph graph;
  AlmostAutomorphism alpha;
  std::size_t normalize_edits = 0;
  std::size_t conversion_edits = 0;
  std::size_t edge_diff = 0;    // |E(A) symmetric-difference E(A')| over labelled directed edges
  std::size_t vertex_diff = 0;  // |{v : alpha(v) != alpha'(v)}|
  std::size_t order = 1;        // exact order of alpha'
  std::size_t input_defect_edges = 0;
  std::size_t input_order_defects = 0;
  CorrectionReport correction;
};

RepairReport repair(const SchreierGraph& a, const AlmostAutomorphism& alpha,
                    const StabilizeOptions& options = {});

}  // namespace pstab

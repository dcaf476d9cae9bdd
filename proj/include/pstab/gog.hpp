#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pstab/action.hpp"
#include "pstab/group.hpp"
#include "pstab/perm.hpp"

namespace pstab {

using VertexId = std::size_t;
using EdgeId = std::size_t;

// A Serre graph: oriented edges come in pairs {e, bar(e)} with
// origin(bar(e)) = terminus(e). `orientation` picks one edge of each pair.
struct SerreGraph {
  std::size_t vertex_count = 0;
  std::vector<VertexId> origin;
  std::vector<VertexId> terminus;
  std::vector<EdgeId> bar;
  std::vector<EdgeId> orientation;  // increasing edge ids
  std::vector<bool> oriented;       // per edge: member of the orientation

  std::size_t edge_count() const { return origin.size(); }
  /// Position of an oriented edge within `orientation`.
  std::size_t orientation_index(EdgeId e) const;
};

struct GraphOfGroups {
  SerreGraph graph;
  std::vector<GroupPtr> vertex_groups;
  std::vector<GroupPtr> edge_groups;  // edge_groups[e] == edge_groups[bar(e)]
  std::vector<GroupHom> inclusions;   // i_e : G_e -> G_{t(e)}
  std::vector<bool> in_tree;          // spanning tree, closed under bar
  std::string name;

  std::size_t vertex_count() const { return graph.vertex_count; }
  std::size_t edge_count() const { return graph.edge_count(); }
  std::size_t oriented_edge_count() const { return graph.orientation.size(); }
  std::size_t max_edge_group_order() const;
};

using GogPtr = std::shared_ptr<const GraphOfGroups>;

// Unvalidated description, as read from a file.
struct RawEdge {
  EdgeId bar = 0;
  VertexId origin = 0;
  VertexId terminus = 0;
  GroupPtr edge_group;
  std::vector<Element> inclusion_to_terminus;
};

struct RawGog {
  std::vector<GroupPtr> vertex_groups;
  std::vector<RawEdge> edges;
  std::optional<std::vector<EdgeId>> tree;
  std::optional<std::vector<EdgeId>> orientation;
  std::string name;
};

/// Checks every invariant of a graph of groups. Defaults: orientation takes
/// the lower id of each pair; the tree is the BFS tree from vertex 0.
/// Throws NonInjectiveEdgeMap, Disconnected, BadInvolution.
GogPtr validate_gog(const RawGog& raw);

// Presentation data of pi_1(G, T).
struct Generator {
  enum class Kind { VertexElement, StableLetter };
  Kind kind;
  std::size_t index;    // vertex id or oriented edge id
  Element element = 0;  // for vertex elements
};

struct Relation {
  enum class Kind { Tree, Conjugation };
  Kind kind;
  EdgeId edge;          // oriented edge
  Element element = 0;  // edge group element for conjugation relations
  bool trivial = false; // g = 1: identically satisfied
};

struct Presentation {
  std::vector<Generator> generators;
  std::vector<Relation> relations;

  std::size_t tree_relation_count() const;
  std::size_t conjugation_relation_count() const;
};

/// S_G and R_G, in vertex / edge id order.
Presentation presentation(const GraphOfGroups& gog);

// A homomorphism from the free product of the vertex groups with the free
// group on the stable letters: an honest action of every vertex group plus a
// permutation per oriented edge. Approximateness lives only in R_G.
struct AlmostAction {
  GogPtr gog;
  std::size_t degree = 0;
  std::vector<FiniteAction> vertex_actions;
  std::vector<Perm> stable_letters;  // indexed by position in the orientation

  /// Checks degrees and that each vertex action belongs to its vertex group.
  void validate() const;

  const Perm& letter(EdgeId oriented_edge) const;
  /// rho(i_e(g)) for any edge e: the action of G_{t(e)} through i_e.
  const Perm& edge_image(EdgeId e, Element g) const;

  friend bool operator==(const AlmostAction& a, const AlmostAction& b) {
    return a.gog == b.gog && a.degree == b.degree && a.vertex_actions == b.vertex_actions &&
           a.stable_letters == b.stable_letters;
  }
};

/// Trivial vertex actions and identity letters.
AlmostAction trivial_almost_action(const GogPtr& gog, std::size_t degree);

/// Builds an AlmostAction from per-generator images (vertex elements keyed by
/// (vertex, element), letters by oriented edge). Missing vertex groups act
/// trivially and missing letters are the identity. Throws VertexActionBroken
/// if a vertex assignment is not an action.
AlmostAction from_generator_images(const GogPtr& gog, std::size_t degree,
                                   const std::map<std::pair<VertexId, Element>, Perm>& vertex_images,
                                   const std::map<EdgeId, Perm>& letters);

/// Number of points where relation r fails.
std::size_t relation_failures(const AlmostAction& rho, const Relation& r);

/// Sum over R_G of d_X(rho(r), 1), as an exact rational.
Rational defect(const AlmostAction& rho);

/// d_{X,S_G}(a, b): sum over every generator of d_X.
Rational generator_distance(const AlmostAction& a, const AlmostAction& b);

/// Defect zero: every relation of R_G holds at every point.
bool is_honest(const AlmostAction& rho);

}  // namespace pstab

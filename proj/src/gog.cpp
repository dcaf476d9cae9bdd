#include "pstab/gog.hpp"

#include <algorithm>
#include <deque>

namespace pstab {

std::size_t SerreGraph::orientation_index(EdgeId e) const {
  auto it = std::lower_bound(orientation.begin(), orientation.end(), e);
  if (it == orientation.end() || *it != e) throw Error("edge " + std::to_string(e) + " is not oriented");
  return std::size_t(it - orientation.begin());
}

std::size_t GraphOfGroups::max_edge_group_order() const {
  std::size_t m = 0;
  for (const GroupPtr& g : edge_groups) m = std::max(m, g->order());
  return m;
}

GogPtr validate_gog(const RawGog& raw) {
  auto gog = std::make_shared<GraphOfGroups>();
  gog->name = raw.name;
  const std::size_t nv = raw.vertex_groups.size();
  const std::size_t ne = raw.edges.size();
  if (nv == 0) throw Disconnected("graph has no vertices");
  SerreGraph& g = gog->graph;
  g.vertex_count = nv;
  gog->vertex_groups = raw.vertex_groups;

  for (EdgeId e = 0; e < ne; ++e) {
    const RawEdge& re = raw.edges[e];
    if (re.origin >= nv || re.terminus >= nv) throw BadInvolution("edge endpoint out of range");
    if (re.bar >= ne) throw BadInvolution("bar of edge " + std::to_string(e) + " out of range");
    g.origin.push_back(re.origin);
    g.terminus.push_back(re.terminus);
    g.bar.push_back(re.bar);
  }
  for (EdgeId e = 0; e < ne; ++e) {
    const EdgeId b = g.bar[e];
    if (b == e) throw BadInvolution("edge " + std::to_string(e) + " is its own bar");
    if (g.bar[b] != e) throw BadInvolution("bar is not an involution at edge " + std::to_string(e));
    if (g.origin[b] != g.terminus[e] || g.terminus[b] != g.origin[e]) {
      throw BadInvolution("bar does not reverse edge " + std::to_string(e));
    }
  }

  // Edge groups and inclusions.
  for (EdgeId e = 0; e < ne; ++e) {
    const RawEdge& re = raw.edges[e];
    const RawEdge& rb = raw.edges[g.bar[e]];
    if (!re.edge_group || !rb.edge_group) throw BadInvolution("missing edge group");
    if (re.edge_group != rb.edge_group && !(re.edge_group->order() == rb.edge_group->order() &&
                                            re.edge_group->same_table(*rb.edge_group))) {
      throw BadInvolution("G_e differs from G_bar(e) at edge " + std::to_string(e));
    }
  }
  gog->edge_groups.resize(ne);
  for (EdgeId e = 0; e < ne; ++e) {
    const EdgeId canonical = std::min(e, g.bar[e]);
    gog->edge_groups[e] = raw.edges[canonical].edge_group;
  }
  for (EdgeId e = 0; e < ne; ++e) {
    GroupHom i(gog->edge_groups[e], gog->vertex_groups[g.terminus[e]],
               raw.edges[e].inclusion_to_terminus);
    if (!i.injective()) throw NonInjectiveEdgeMap("inclusion of edge " + std::to_string(e));
    gog->inclusions.push_back(std::move(i));
  }

  // Orientation.
  g.oriented.assign(ne, false);
  if (raw.orientation) {
    for (EdgeId e : *raw.orientation) {
      if (e >= ne) throw BadInvolution("orientation edge out of range");
      g.oriented[e] = true;
    }
    for (EdgeId e = 0; e < ne; ++e) {
      if (g.oriented[e] == g.oriented[g.bar[e]]) {
        throw BadInvolution("orientation must contain exactly one of each pair");
      }
    }
  } else {
    for (EdgeId e = 0; e < ne; ++e) g.oriented[e] = e < g.bar[e];
  }
  for (EdgeId e = 0; e < ne; ++e) {
    if (g.oriented[e]) g.orientation.push_back(e);
  }

  // Connectivity and spanning tree.
  gog->in_tree.assign(ne, false);
  std::vector<bool> reached(nv, false);
  std::deque<VertexId> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e = 0; e < ne; ++e) {
      if (g.origin[e] != v || reached[g.terminus[e]]) continue;
      reached[g.terminus[e]] = true;
      queue.push_back(g.terminus[e]);
      if (!raw.tree) {
        gog->in_tree[e] = true;
        gog->in_tree[g.bar[e]] = true;
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    throw Disconnected("graph is not connected");
  }
  if (raw.tree) {
    for (EdgeId e : *raw.tree) {
      if (e >= ne) throw BadInvolution("tree edge out of range");
      gog->in_tree[e] = true;
      gog->in_tree[g.bar[e]] = true;
    }
    // A spanning tree has |V|-1 geometric edges and connects every vertex.
    std::size_t pairs = 0;
    for (EdgeId e = 0; e < ne; ++e) pairs += gog->in_tree[e] && g.oriented[e];
    std::vector<VertexId> parent(nv);
    for (VertexId v = 0; v < nv; ++v) parent[v] = v;
    auto find = [&](VertexId v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (EdgeId e = 0; e < ne; ++e) {
      if (!gog->in_tree[e] || !g.oriented[e]) continue;
      const VertexId a = find(g.origin[e]);
      const VertexId b = find(g.terminus[e]);
      if (a == b) throw Disconnected("tree contains a cycle");
      parent[a] = b;
    }
    if (pairs != nv - 1) throw Disconnected("tree does not span the graph");
  }
  return gog;
}

std::size_t Presentation::tree_relation_count() const {
  return std::size_t(std::count_if(relations.begin(), relations.end(),
                                   [](const Relation& r) { return r.kind == Relation::Kind::Tree; }));
}

std::size_t Presentation::conjugation_relation_count() const {
  return relations.size() - tree_relation_count();
}

Presentation presentation(const GraphOfGroups& gog) {
  Presentation p;
  for (VertexId v = 0; v < gog.vertex_count(); ++v) {
    for (Element g = 0; g < gog.vertex_groups[v]->order(); ++g) {
      p.generators.push_back({Generator::Kind::VertexElement, v, g});
    }
  }
  for (EdgeId e : gog.graph.orientation) p.generators.push_back({Generator::Kind::StableLetter, e, 0});
  for (EdgeId e : gog.graph.orientation) {
    if (gog.in_tree[e]) p.relations.push_back({Relation::Kind::Tree, e, 0, false});
  }
  for (EdgeId e : gog.graph.orientation) {
    for (Element g = 0; g < gog.edge_groups[e]->order(); ++g) {
      p.relations.push_back({Relation::Kind::Conjugation, e, g, g == 0});
    }
  }
  return p;
}

void AlmostAction::validate() const {
  if (!gog) throw Error("almost action without a graph of groups");
  if (vertex_actions.size() != gog->vertex_count()) throw DegreeMismatch("one vertex action per vertex");
  if (stable_letters.size() != gog->oriented_edge_count()) {
    throw DegreeMismatch("one stable letter per oriented edge");
  }
  for (VertexId v = 0; v < vertex_actions.size(); ++v) {
    if (vertex_actions[v].degree() != degree) throw DegreeMismatch("vertex action degree");
    if (vertex_actions[v].group() != gog->vertex_groups[v]) {
      throw VertexActionBroken("vertex action of vertex " + std::to_string(v) + " has the wrong group");
    }
  }
  for (const Perm& s : stable_letters) {
    if (s.degree() != degree) throw DegreeMismatch("stable letter degree");
  }
}

const Perm& AlmostAction::letter(EdgeId oriented_edge) const {
  return stable_letters.at(gog->graph.orientation_index(oriented_edge));
}

const Perm& AlmostAction::edge_image(EdgeId e, Element g) const {
  return vertex_actions[gog->graph.terminus[e]](gog->inclusions[e](g));
}

AlmostAction trivial_almost_action(const GogPtr& gog, std::size_t degree) {
  AlmostAction a;
  a.gog = gog;
  a.degree = degree;
  for (VertexId v = 0; v < gog->vertex_count(); ++v) {
    a.vertex_actions.push_back(FiniteAction::trivial(gog->vertex_groups[v], degree));
  }
  a.stable_letters.assign(gog->oriented_edge_count(), Perm::identity(degree));
  return a;
}

AlmostAction from_generator_images(const GogPtr& gog, std::size_t degree,
                                   const std::map<std::pair<VertexId, Element>, Perm>& vertex_images,
                                   const std::map<EdgeId, Perm>& letters) {
  AlmostAction a = trivial_almost_action(gog, degree);
  for (VertexId v = 0; v < gog->vertex_count(); ++v) {
    std::vector<std::pair<Element, Perm>> gens;
    for (const auto& [key, perm] : vertex_images) {
      if (key.first == v) gens.emplace_back(key.second, perm);
    }
    if (gens.empty()) continue;
    try {
      a.vertex_actions[v] = FiniteAction::from_generators(gog->vertex_groups[v], degree, gens);
    } catch (const NotAnAction& err) {
      throw VertexActionBroken("vertex " + std::to_string(v) + ": " + err.what());
    }
  }
  for (const auto& [e, perm] : letters) {
    if (e >= gog->edge_count() || !gog->graph.oriented[e]) {
      throw Error("stable letter for non-oriented edge " + std::to_string(e));
    }
    if (perm.degree() != degree) throw DegreeMismatch("stable letter degree");
    a.stable_letters[gog->graph.orientation_index(e)] = perm;
  }
  for (const auto& [key, perm] : vertex_images) {
    if (key.first >= gog->vertex_count()) throw Error("vertex id out of range");
    if (a.vertex_actions[key.first](key.second) != perm) {
      throw VertexActionBroken("image of element " + std::to_string(key.second) + " at vertex " +
                               std::to_string(key.first) + " is inconsistent");
    }
  }
  a.validate();
  return a;
}

std::size_t relation_failures(const AlmostAction& rho, const Relation& r) {
  const Perm& s = rho.letter(r.edge);
  if (r.kind == Relation::Kind::Tree) return support_size(s);
  if (r.trivial) return 0;
  // s^-1 i_e(g) s = i_bar(e)(g), evaluated pointwise as i_e(g)(s(x)) vs s(i_bar(g)(x)).
  const Perm& a = rho.edge_image(r.edge, r.element);
  const Perm& b = rho.edge_image(rho.gog->graph.bar[r.edge], r.element);
  std::size_t failures = 0;
  for (Point x = 0; x < rho.degree; ++x) failures += a[s[x]] != s[b[x]];
  return failures;
}

Rational defect(const AlmostAction& rho) {
  rho.validate();
  if (rho.degree == 0) return Rational(0);
  std::size_t total = 0;
  for (const Relation& r : presentation(*rho.gog).relations) total += relation_failures(rho, r);
  return Rational(long(total), long(rho.degree));
}

Rational generator_distance(const AlmostAction& a, const AlmostAction& b) {
  if (a.degree != b.degree || a.gog != b.gog) throw DegreeMismatch("incomparable almost actions");
  if (a.degree == 0) return Rational(0);
  std::size_t total = 0;
  for (VertexId v = 0; v < a.vertex_actions.size(); ++v) {
    for (Element g = 0; g < a.vertex_actions[v].group()->order(); ++g) {
      total += hamming(a.vertex_actions[v](g), b.vertex_actions[v](g));
    }
  }
  for (std::size_t k = 0; k < a.stable_letters.size(); ++k) {
    total += hamming(a.stable_letters[k], b.stable_letters[k]);
  }
  return Rational(long(total), long(a.degree));
}

bool is_honest(const AlmostAction& rho) { return defect(rho) == 0; }

}  // namespace pstab

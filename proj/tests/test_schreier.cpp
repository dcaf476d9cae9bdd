#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pstab/harness.hpp"
#include "pstab/schreier.hpp"

using namespace pstab;

namespace {

// Exactness oracle straight from the definition, over materialized edge triples.
bool exact_by_edges(const SchreierGraph& a, const Perm& alpha, std::size_t n) {
  for (std::size_t l = 0; l < a.rank(); ++l) {
    for (Point v = 0; v < a.vertices; ++v) {
      // Edge (l, v, s_l(v)) maps to the l-labelled out-edge at alpha(v); its
      // terminus must be alpha(s_l(v)).
      if (a.labels[l][alpha[v]] != alpha[a.labels[l][v]]) return false;
    }
  }
  Perm p = Perm::identity(a.vertices);
  for (std::size_t k = 0; k < n; ++k) p = alpha * p;
  return p.is_identity();
}

}  // namespace

TEST_CASE("edge bookkeeping") {
  SchreierGraph a{3, {Perm{1, 2, 0}, Perm{0, 2, 1}}};
  CHECK(a.edge_count() == 6);
  CHECK(a.edge_id(1, 2) == 5);
  CHECK(a.label(5) == 1);
  CHECK(a.origin(5) == 2);
  CHECK(a.terminus(5) == 1);
  SchreierGraph bad{3, {Perm{1, 0}}};
  CHECK_THROWS_AS(bad.validate(), DegreeMismatch);
  CHECK(order_of(Perm{1, 2, 0, 4, 3}) == 6);
  CHECK(order_of(Perm::identity(4)) == 1);
}

TEST_CASE("normalize_weak") {
  // Rotation of a 4-cycle graph commutes with the label.
  SchreierGraph a{4, {Perm{1, 2, 3, 0}}};
  Perm rot{1, 2, 3, 0};
  AlmostAutomorphism alpha{rot, induced_edge_map(a, rot), 4};
  CHECK(is_exact(a, alpha));
  Normalized same = normalize_weak(a, alpha);
  CHECK(same.alpha == alpha);
  CHECK(same.edits == 0);

  // Relabel one image edge by swapping two edge images.
  std::vector<Point> edges = alpha.edge_map.images();
  std::swap(edges[0], edges[1]);
  AlmostAutomorphism weak{rot, Perm(edges), 4};
  CHECK(!is_strict(a, weak));
  CHECK(defect_edges(a, weak).size() == 2);
  Normalized fixed = normalize_weak(a, weak);
  CHECK(fixed.alpha == alpha);
  CHECK(fixed.edits == 2);

  // Random weak automorphisms: edits never exceed twice the defect count.
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SchreierPair p = random_honest_schreier(2, 3, 30, seed);
    SchreierPair q = perturb_schreier(p, 1 + seed % 5, seed + 100);
    Normalized n = normalize_weak(q.graph, q.alpha);
    CHECK(is_strict(q.graph, n.alpha));
    CHECK(n.edits <= 2 * defect_edges(q.graph, q.alpha).size());
  }
}

TEST_CASE("to_almost_action") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SchreierPair p = random_honest_schreier(2, 4, 24, seed);
    REQUIRE(exact_by_edges(p.graph, p.alpha.vertex_map, 4));
    Conversion c = to_almost_action(p.graph, p.alpha);
    CHECK(defect(c.action) == 0);
    CHECK(c.edits == 0);
    // Round trip.
    auto [g, alpha] = from_almost_action(c.action);
    CHECK(g == p.graph);
    CHECK(alpha == p.alpha);
  }
  // alpha = id, n = 1.
  SchreierGraph a{5, {Perm{1, 2, 3, 4, 0}}};
  Conversion one = to_almost_action(a, {Perm::identity(5), Perm::identity(5), 1});
  CHECK(defect(one.action) == 0);

  // One broken n-cycle: the broken cycle is dropped from the vertex action,
  // and the defect is the exact relation count over |X|.
  Perm alpha{1, 2, 0, 4, 5, 6, 3};  // 3-cycle and a 4-cycle, n = 3
  SchreierGraph b{7, {Perm::identity(7)}};
  AlmostAutomorphism aa{alpha, induced_edge_map(b, alpha), 3};
  CHECK(order_defect_vertices(aa).size() == 4);
  Conversion c = to_almost_action(b, aa);
  CHECK(c.edits == 4);
  CHECK(c.vertex_generator == Perm{1, 2, 0, 3, 4, 5, 6});
  CHECK(defect(c.action) == 0);
  CHECK_THROWS_AS(to_almost_action(b, {alpha, Perm::identity(7), 3}), PreconditionFailed);
}

TEST_CASE("repair: exact input is untouched") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SchreierPair p = random_honest_schreier(2, 3, 30, seed);
    RepairReport r = repair(p.graph, p.alpha);
    CHECK(r.graph == p.graph);
    CHECK(r.alpha == p.alpha);
    CHECK(r.edge_diff == 0);
    CHECK(r.vertex_diff == 0);
  }
}

TEST_CASE("repair: perturbed pairs become exact") {
  for (std::size_t n : {2, 3, 4}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SchreierPair p = random_honest_schreier(2, n, 100, seed);
      SchreierPair q = perturb_schreier(p, 2, seed + 7);
      RepairReport r = repair(q.graph, q.alpha);
      CHECK(exact_by_edges(r.graph, r.alpha.vertex_map, n));
      CHECK(r.alpha.n == n);
      CHECK(n % r.order == 0);
      CHECK(r.correction.output_defect == 0);
    }
  }
}

TEST_CASE("repair: order 2 map with n = 4") {
  SchreierGraph a{4, {Perm{1, 0, 3, 2}}};
  Perm swap{1, 0, 3, 2};
  RepairReport r = repair(a, {swap, induced_edge_map(a, swap), 4});
  CHECK(exact_by_edges(r.graph, r.alpha.vertex_map, 4));
  CHECK(r.vertex_diff == 0);
  CHECK(r.order == 2);
}

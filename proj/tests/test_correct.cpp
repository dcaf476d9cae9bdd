#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "pstab/correct.hpp"
#include "pstab/rng.hpp"
#include "pstab/zoo.hpp"

using namespace pstab;

namespace {

IntVector vec(std::initializer_list<std::int64_t> v) {
  IntVector out(Eigen::Index(v.size()));
  Eigen::Index k = 0;
  for (auto x : v) out[k++] = x;
  return out;
}

Perm random_perm(std::size_t n, Rng& rng) {
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), Point{0});
  rng.shuffle(p);
  return Perm(p);
}

// Relation oracle by explicit composition: tree letters are the identity and
// s^-1 i_e(g) s = i_bar(e)(g) as permutations, for every edge group element.
bool relations_hold(const AlmostAction& a) {
  const GraphOfGroups& gog = *a.gog;
  for (std::size_t k = 0; k < gog.oriented_edge_count(); ++k) {
    const EdgeId e = gog.graph.orientation[k];
    const Perm& s = a.stable_letters[k];
    if (gog.in_tree[e] && !s.is_identity()) return false;
    const EdgeId eb = gog.graph.bar[e];
    for (Element g = 0; g < gog.edge_groups[e]->order(); ++g) {
      const Perm& lhs = a.vertex_actions[gog.graph.terminus[e]](gog.inclusions[e](g));
      const Perm& rhs = a.vertex_actions[gog.graph.terminus[eb]](gog.inclusions[eb](g));
      if (!(s.inverse() * lhs * s == rhs)) return false;
    }
  }
  return true;
}

// Orbit counts by class, recomputed from orbit_decompose.
IntVector counted_types(const FiniteAction& rho) {
  IntVector out = IntVector::Zero(Eigen::Index(rho.group()->classes().size()));
  for (const Orbit& o : orbit_decompose(rho)) ++out[Eigen::Index(o.class_index)];
  return out;
}

AlmostAction relabel_all(const AlmostAction& a, const Perm& pi) {
  AlmostAction out = a;
  for (auto& v : out.vertex_actions) v = relabel(v, pi);
  for (auto& s : out.stable_letters) s = conjugate(s, pi);
  return out;
}

// Honest SL2(Z) action of degree 12: 2 regular + 4 fixed for Z/4, one regular
// + one degree-2 + 4 fixed for Z/6, realized then relabelled.
AlmostAction honest_sl2z(Rng& rng) {
  GogPtr gog = sl2z_gog();
  OrbitVector target{LatticeBasis::vertices(*gog), vec({2, 0, 4, 1, 0, 1, 4})};
  AlmostAction a = realize_action(trivial_almost_action(gog, 12), target, Checks::Lenient).action;
  REQUIRE(relations_hold(a));
  return relabel_all(a, random_perm(12, rng));
}

// Honest F2 x Z/3 action on 9 points: 3 regular orbits, letters random
// equivariant bijections (hence commuting with the vertex action).
AlmostAction honest_f2z3(Rng& rng) {
  GogPtr gog = free_times_cyclic_gog(2, 3);
  AlmostAction a = trivial_almost_action(gog, 9);
  const GroupPtr& g = gog->vertex_groups[0];
  a.vertex_actions[0] = relabel(FiniteAction::model(g, vec({3, 0})), random_perm(9, rng));
  for (auto& s : a.stable_letters) {
    s = Perm(equivariant_matching(a.vertex_actions[0], full_set(9), a.vertex_actions[0], full_set(9), &rng));
  }
  REQUIRE(relations_hold(a));
  return a;
}

// All actions of a cyclic group Z/m on n points, via generator images.
std::vector<FiniteAction> all_cyclic_actions(const GroupPtr& g, std::size_t n) {
  std::vector<FiniteAction> out;
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), Point{0});
  do {
    Perm x(p), power = Perm::identity(n);
    for (std::size_t k = 0; k < g->order(); ++k) power = x * power;
    if (power.is_identity()) out.push_back(FiniteAction::from_generators(g, n, {{1, x}}));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("fix_vertex_action: delta 0 is a fixed point") {
  auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  GroupHom i(z2, z4, {0, 2});
  Rng rng(1);
  FiniteAction rho = relabel(FiniteAction::model(z4, vec({1, 1, 2})), random_perm(8, rng));
  const IntVector lambda = orbit_counts(rho);
  VertexFix fix = fix_vertex_action(rho.pullback(i), i, rho, lambda, 0);
  CHECK(fix.action == rho);
  CHECK(fix.distance == 0);
  CHECK(fix.bound_holds);
  CHECK(admissible_delta(rho.pullback(i), i, rho, lambda) == 0);
}

TEST_CASE("fix_vertex_action: Z/4 over Z/2 with a re-paired orbit") {
  auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  GroupHom i(z2, z4, {0, 2});
  FiniteAction rho = FiniteAction::model(z4, vec({2, 0, 0}));
  REQUIRE(rho.degree() == 8);
  // rho(2) pairs the points into four 2-cycles; swap partners across two of them.
  const Perm& half = rho(2);
  const Point a = 0, b = half[0];
  Point c = 1;
  while (c == a || c == b) ++c;
  const Point d = half[c];
  std::vector<Point> img = half.images();
  img[a] = c;
  img[c] = a;
  img[b] = d;
  img[d] = b;
  FiniteAction phi(z2, {Perm::identity(8), Perm(img)});
  CHECK(orbit_counts(phi) == vec({4, 0}));
  const IntVector lambda_prime = vec({2, 0, 0});
  const Rational delta = admissible_delta(phi, i, rho, lambda_prime);
  CHECK(delta == Rational(4, 8));
  VertexFix fix = fix_vertex_action(phi, i, rho, lambda_prime, delta);
  for (Element h = 0; h < 2; ++h) CHECK(fix.action(i(h)) == phi(h));
  CHECK(counted_types(fix.action) == lambda_prime);
  CHECK(fix.distance <= 2 * 2 * 16 * delta);
  CHECK(fix.bound_holds);
  // Orbits of rho avoiding {a, b, c, d} keep their points.
  CHECK(fix.kept_points <= 8);
}

TEST_CASE("fix_vertex_action: preconditions") {
  auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  GroupHom i(z2, z4, {0, 2});
  FiniteAction rho = FiniteAction::model(z4, vec({2, 0, 0}));
  FiniteAction phi = rho.pullback(i);
  // i*(lambda') must equal phi#.
  CHECK_THROWS_AS(fix_vertex_action(phi, i, rho, vec({1, 2, 0}), 1), PreconditionFailed);
  // lambda' is compatible but far: needs delta >= 1/2.
  FiniteAction phi2 = FiniteAction::model(z4, vec({1, 2, 0})).pullback(i);
  CHECK_THROWS_AS(fix_vertex_action(phi2, i, rho, vec({1, 2, 0}), Rational(1, 4)), PreconditionFailed);
}

TEST_CASE("fix_vertex_action with trivial H against exhaustive re-typing") {
  auto one = trivial_group();
  for (std::size_t m : {2, 3}) {
    auto g = cyclic_group(m);
    GroupHom i = GroupHom::trivial(one, g);
    for (std::size_t n = 1; n <= 7; ++n) {
      const auto all = all_cyclic_actions(g, n);
      FiniteAction phi = FiniteAction::trivial(one, n);
      std::vector<IntVector> types;
      for (const FiniteAction& x : all) {
        const IntVector c = orbit_counts(x);
        if (std::find(types.begin(), types.end(), c) == types.end()) types.push_back(c);
      }
      for (std::size_t r = 0; r < all.size(); r += std::max<std::size_t>(1, all.size() / 12)) {
        const FiniteAction& rho = all[r];
        for (const IntVector& lambda_prime : types) {
          const Rational delta = admissible_delta(phi, i, rho, lambda_prime);
          VertexFix fix = fix_vertex_action(phi, i, rho, lambda_prime, delta);
          CHECK(counted_types(fix.action) == lambda_prime);
          CHECK(fix.bound_holds);
          // Oracle: the nearest action of type lambda'.
          Rational best = -1;
          for (const FiniteAction& cand : all) {
            if (orbit_counts(cand) != lambda_prime) continue;
            const Rational d = action_distance(rho, cand);
            if (best < 0 || d < best) best = d;
          }
          CHECK(best <= fix.distance);
          if (lambda_prime == orbit_counts(rho)) CHECK(fix.distance == 0);
        }
      }
    }
  }
}

TEST_CASE("realize_action: honest input with its own sharp is unchanged") {
  Rng rng(2);
  AlmostAction a = honest_sl2z(rng);
  Realization r = realize_action(a, sharp(a));
  CHECK(r.action == a);
  CHECK(generator_distance(a, r.action) == 0);
  AlmostAction f = honest_f2z3(rng);
  CHECK(realize_action(f, sharp(f)).action == f);
}

TEST_CASE("realize_action: preconditions") {
  GogPtr gog = sl2z_gog();
  AlmostAction a = trivial_almost_action(gog, 12);
  BasisPtr b = LatticeBasis::vertices(*gog);
  // Not in the kernel.
  CHECK_THROWS_AS(realize_action(a, OrbitVector{b, vec({3, 0, 0, 2, 0, 0, 0})}), PreconditionFailed);
  // Wrong norm.
  CHECK_THROWS_AS(realize_action(a, OrbitVector{b, vec({0, 0, 11, 0, 0, 0, 11})}), PreconditionFailed);
  // Far from sharp(a) while a is honest.
  CHECK_THROWS_AS(realize_action(a, OrbitVector{b, vec({2, 0, 4, 1, 0, 1, 4})}), PreconditionFailed);
  CHECK(relations_hold(realize_action(a, OrbitVector{b, vec({2, 0, 4, 1, 0, 1, 4})}, Checks::Lenient).action));
}

TEST_CASE("stabilize: SL2(Z) on 12 points with a transposition on the letter") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    AlmostAction honest = honest_sl2z(rng);
    AlmostAction a = honest;
    const Point x = Point(rng.below(12));
    Point y = Point(rng.below(11));
    if (y >= x) ++y;
    a.stable_letters[0] = transposition(12, x, y) * a.stable_letters[0];
    CHECK(defect(a) > 0);
    CorrectionReport r = stabilize(a);
    CHECK(r.output_defect == 0);
    CHECK(relations_hold(r.output));
    CHECK(counted_types(r.output.vertex_actions[0]) == r.lambda_prime.block(0));
    CHECK(counted_types(r.output.vertex_actions[1]) == r.lambda_prime.block(1));
    CHECK(r.kernel_bound_holds);
    CHECK(r.vertex_bounds_hold);
    CHECK(r.distance == r.vertex_distance + r.letter_distance);
    // The letter returns to the identity and vertex actions are untouched.
    CHECK(r.distance == Rational(2, 12));
    REQUIRE(r.stability_ratio.has_value());
  }
}

TEST_CASE("stabilize: F2 x Z/3 on 9 points with both letters perturbed") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    AlmostAction a = honest_f2z3(rng);
    const OrbitVector before = sharp(a);
    for (auto& s : a.stable_letters) {
      const Point x = Point(rng.below(9));
      Point y = Point(rng.below(8));
      if (y >= x) ++y;
      s = transposition(9, x, y) * s;
    }
    CorrectionReport r = stabilize(a);
    CHECK(r.output_defect == 0);
    CHECK(relations_hold(r.output));
    CHECK(sharp(r.output) == before);
    CHECK(r.output.vertex_actions == a.vertex_actions);
    CHECK(r.vertex_distance == 0);
    CHECK(r.vertex_bounds_hold);
  }
}

TEST_CASE("stabilize: exact, idempotent, and fixes honest inputs on the zoo") {
  Rng rng(5);
  for (const auto& name : zoo_names()) {
    GogPtr gog = gog_by_name(name);
    for (int t = 0; t < 15; ++t) {
      const std::size_t n = 1 + rng.below(15);
      AlmostAction a = trivial_almost_action(gog, n);
      for (VertexId v = 0; v < gog->vertex_count(); ++v) {
        const GroupPtr& g = gog->vertex_groups[v];
        IntVector counts = IntVector::Zero(Eigen::Index(g->classes().size()));
        std::size_t left = n;
        while (left > 0) {
          const std::size_t c = rng.below(counts.size());
          if (g->classes()[c].degree <= left) {
            ++counts[Eigen::Index(c)];
            left -= g->classes()[c].degree;
          }
        }
        a.vertex_actions[v] = relabel(FiniteAction::model(g, counts), random_perm(n, rng));
      }
      for (std::size_t k = 0; k < a.stable_letters.size(); ++k) {
        if (!gog->in_tree[gog->graph.orientation[k]]) a.stable_letters[k] = random_perm(n, rng);
      }
      CorrectionReport r = stabilize(a);
      CHECK(r.output_defect == 0);
      CHECK(relations_hold(r.output));
      CHECK(r.kernel_bound_holds);
      CHECK(r.vertex_bounds_hold);
      CHECK(r.distance == generator_distance(a, r.output));
      CorrectionReport again = stabilize(r.output);
      CHECK(again.distance == 0);
      CHECK(again.output == r.output);
    }
  }
}

TEST_CASE("stabilize: adversarial input still yields an exact action") {
  Rng rng(6);
  GogPtr gog = two_edge_loop_gog();
  AlmostAction a = trivial_almost_action(gog, 12);
  // Two regular Z/6 orbits against a trivial Z/2 vertex: far from the kernel.
  IntVector counts = IntVector::Zero(Eigen::Index(gog->vertex_groups[0]->classes().size()));
  counts[0] = 2;
  a.vertex_actions[0] = FiniteAction::model(gog->vertex_groups[0], counts);
  for (auto& s : a.stable_letters) s = random_perm(12, rng);
  CorrectionReport r = stabilize(a);
  CHECK(r.output_defect == 0);
  CHECK(relations_hold(r.output));
}

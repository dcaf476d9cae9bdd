#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "pstab/harness.hpp"
#include "pstab/zoo.hpp"

using namespace pstab;

TEST_CASE("kernel cone generators") {
  GogPtr gog = sl2z_gog();
  const auto gens = kernel_cone_generators(*gog, 6);
  const DGMatrix d = dg_matrix(*gog);
  bool has_singleton = false;
  for (const OrbitVector& g : gens) {
    CHECK(g.in_cone());
    CHECK((d.matrix * g.coords).isZero());
    has_singleton = has_singleton || g == singleton_sharp(*gog);
  }
  CHECK(has_singleton);
  // Regular Z/4 and Z/2-stabilizer-free Z/6 orbits: 4 = 2 + 2, restricting
  // to two free Z/2 orbits on both sides.
  IntVector v = IntVector::Zero(7);
  v[0] = 1;
  v[5] = 2;
  CHECK(std::any_of(gens.begin(), gens.end(), [&](const OrbitVector& g) { return g.coords == v; }));
}

TEST_CASE("random honest actions") {
  for (const auto& name : zoo_names()) {
    GogPtr gog = gog_by_name(name);
    for (std::size_t n : {1, 12, 37}) {
      AlmostAction a = random_honest_action(gog, n, 7 + n);
      CHECK(defect(a) == 0);
      CHECK(apply(dg_matrix(*gog), sharp(a)).coords.isZero());
      CHECK(a == random_honest_action(gog, n, 7 + n));
    }
  }
  GogPtr gog = sl2z_gog();
  CHECK(sharp(random_honest_action(gog, 1, 3)) == singleton_sharp(*gog));
}

TEST_CASE("perturbation models") {
  GogPtr gog = sl2z_gog();
  AlmostAction a = random_honest_action(gog, 12, 11);
  Perturbed none = perturb(a, {PerturbModel::Kind::Transpositions, 0}, 1);
  CHECK(none.action == a);
  CHECK(defect(none.action) == 0);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Perturbed one = perturb(a, {PerturbModel::Kind::Transpositions, 1}, seed);
    CHECK(one.edits == 1);
    // Tree relation plus two conjugation relations, each moved on at most two points.
    CHECK(defect(one.action) <= Rational(2 * 2 * 2, 12) + Rational(2, 12));
    for (std::size_t k : {2, 5, 10}) {
      Perturbed many = perturb(a, {PerturbModel::Kind::Transpositions, k}, seed);
      CHECK(defect(many.action) <= Rational(long(6 * k), 12));
    }
    Perturbed v = perturb(a, {PerturbModel::Kind::Vertex, 1}, seed);
    v.action.validate();
    Perturbed r = perturb(a, {PerturbModel::Kind::Rate, 0, 0.1}, seed);
    CHECK(r.action.stable_letters.size() == 1);
  }
  bool left_kernel = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Perturbed re = perturb(a, {PerturbModel::Kind::Retype, 1}, seed);
    re.action.validate();
    CHECK(norm(sharp(re.action)) == 12);
    left_kernel = left_kernel || !apply(dg_matrix(*gog), sharp(re.action)).coords.isZero();
  }
  CHECK(left_kernel);
  CHECK(perturb(a, {PerturbModel::Kind::Mixed, 3}, 4).action == perturb(a, {PerturbModel::Kind::Mixed, 3}, 4).action);
}

TEST_CASE("brute force enumeration") {
  GogPtr trivial = single_vertex_gog(trivial_group());
  CHECK(brute_force_actions(trivial, 2).size() == 1);
  GogPtr z2 = single_vertex_gog(cyclic_group(2));
  CHECK(brute_force_actions(z2, 2).size() == 2);
  // Z/3 on 3 points: identity plus the two 3-cycles.
  CHECK(brute_force_actions(single_vertex_gog(cyclic_group(3)), 3).size() == 3);
  // F1 x Z/2 on 2 points: pairs of commuting elements of Sym(2).
  CHECK(brute_force_actions(free_times_cyclic_gog(1, 2), 2).size() == 4);
  // Z/2 * Z/3 on 2 points: Hom(Z/2, Sym 2) x Hom(Z/3, Sym 2).
  CHECK(brute_force_actions(free_product_gog(2, 3), 2).size() == 2);
  GogPtr sl2z = sl2z_gog();
  const DGMatrix d = dg_matrix(*sl2z);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = brute_force_actions(sl2z, n);
    CHECK(!all.empty());
    for (const auto& a : all) {
      CHECK(defect(a) == 0);
      CHECK(apply(d, sharp(a)).coords.isZero());
    }
  }
  CHECK_THROWS_AS(brute_force_actions(sl2z, 7), TooLarge);
  CHECK_THROWS_AS(brute_force_actions(single_vertex_gog(cyclic_group(7)), 2), TooLarge);
}

TEST_CASE("trials are deterministic and exact") {
  TrialConfig c{"sl2z", 24, {PerturbModel::Kind::Transpositions, 2}, 5, 4};
  auto a = run_trials(c);
  auto b = run_trials(c);
  REQUIRE(a.size() == 4);
  std::ostringstream sa, sb;
  write_csv_header(sa);
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].output_exact);
    CHECK(a[t].kernel_bound_holds);
    CHECK(a[t].vertex_bounds_hold);
    CHECK(a[t].delta == b[t].delta);
    CHECK(a[t].distance == b[t].distance);
    a[t].runtime_ms = b[t].runtime_ms = 0;
    write_csv(sa, a[t]);
    write_csv(sb, b[t]);
  }
  CHECK(sa.str().rfind("gog,degree,model,seed,delta,kernel_defect,cone_ratio,distance,runtime_ms,fallback\n", 0) == 0);
  CHECK(sa.str().find("sl2z,24,transpositions:2,") != std::string::npos);
  CHECK_THROWS_AS(run_trials({"nope", 5}), ParseError);
}

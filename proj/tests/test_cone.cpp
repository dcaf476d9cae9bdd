#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "pstab/cone.hpp"
#include "pstab/hnf.hpp"
#include "pstab/rng.hpp"
#include "pstab/simplex.hpp"
#include "pstab/zoo.hpp"

using namespace pstab;

namespace {

IntVector vec(std::initializer_list<std::int64_t> v) {
  IntVector out(Eigen::Index(v.size()));
  Eigen::Index k = 0;
  for (auto x : v) out[k++] = x;
  return out;
}

struct OracleBest {
  std::int64_t distance = -1;
  IntVector point;
};

// Exhaustive oracle: all integer x >= 0 with sum(w x) <= sum(w lambda) and
// d x = 0; best under (distance, -norm, lexicographic).
OracleBest exhaustive(const ConeProblem& p) {
  const Eigen::Index n = p.matrix.cols();
  const std::int64_t total = p.lambda.dot(p.source_weights);
  OracleBest best;
  IntVector x = IntVector::Zero(n);
  std::function<void(Eigen::Index, std::int64_t)> rec = [&](Eigen::Index j, std::int64_t used) {
    if (j == n) {
      if (!(p.matrix * x).isZero()) return;
      const std::int64_t dist = ((p.lambda - x).array().abs() * p.source_weights.array()).sum();
      const std::int64_t nrm = x.dot(p.source_weights);
      bool better = best.distance < 0 || dist < best.distance;
      if (!better && dist == best.distance) {
        const std::int64_t bn = best.point.dot(p.source_weights);
        if (nrm != bn) {
          better = nrm > bn;
        } else {
          better = std::lexicographical_compare(x.data(), x.data() + n, best.point.data(),
                                                best.point.data() + n);
        }
      }
      if (better) {
        best.distance = dist;
        best.point = x;
      }
      return;
    }
    for (std::int64_t v = 0; used + v * p.source_weights[j] <= total; ++v) {
      x[j] = v;
      rec(j + 1, used + v * p.source_weights[j]);
    }
    x[j] = 0;
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("simplex: textbook problems") {
  using Lp = LinearProgram<Rational>;
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3  -> (3, 1), value 11.
  Lp lp(2);
  lp.add_row({{0, 1}, {1, 1}}, Lp::Sense::Le, 4);
  lp.add_row({{0, 1}, {1, 3}}, Lp::Sense::Le, 6);
  lp.add_row({{0, 1}}, Lp::Sense::Le, 3);
  lp.set_cost(0, -3);
  lp.set_cost(1, -2);
  auto r = lp.solve();
  REQUIRE(r.optimal());
  CHECK(r.objective == -11);
  CHECK(r.x[0] == 3);
  CHECK(r.x[1] == 1);

  Lp infeasible(1);
  infeasible.add_row({{0, 1}}, Lp::Sense::Ge, 2);
  infeasible.add_row({{0, 1}}, Lp::Sense::Le, 1);
  CHECK(infeasible.solve().status == LpResult<Rational>::Status::Infeasible);

  Lp unbounded(2);
  unbounded.add_row({{0, 1}, {1, -1}}, Lp::Sense::Eq, 0);
  unbounded.set_cost(0, -1);
  CHECK(unbounded.solve().status == LpResult<Rational>::Status::Unbounded);

  // Redundant equalities and a fractional optimum.
  Lp red(2);
  red.add_row({{0, 2}, {1, 2}}, Lp::Sense::Eq, 3);
  red.add_row({{0, 1}, {1, 1}}, Lp::Sense::Eq, Rational(3, 2));
  red.set_cost(0, 1);
  auto rr = red.solve();
  REQUIRE(rr.optimal());
  CHECK(rr.x[1] == Rational(3, 2));
  CHECK(rr.objective == 0);
}

TEST_CASE("simplex: Beale's cycling example terminates under Bland") {
  using Lp = LinearProgram<Rational>;
  Lp lp(4);
  lp.add_row({{0, Rational(1, 4)}, {1, -8}, {2, -1}, {3, 9}}, Lp::Sense::Le, 0);
  lp.add_row({{0, Rational(1, 2)}, {1, -12}, {2, Rational(-1, 2)}, {3, 3}}, Lp::Sense::Le, 0);
  lp.add_row({{2, 1}}, Lp::Sense::Le, 1);
  lp.set_cost(0, Rational(-3, 4));
  lp.set_cost(1, 20);
  lp.set_cost(2, Rational(-1, 2));
  lp.set_cost(3, 6);
  auto r = lp.solve();
  REQUIRE(r.optimal());
  CHECK(r.objective == Rational(-5, 4));
}

TEST_CASE("kernel basis spans the integer kernel") {
  Rng rng(9);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index m = 1 + Eigen::Index(rng.below(3)), n = 2 + Eigen::Index(rng.below(3));
    IntMatrix d(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) d(i, j) = std::int64_t(rng.below(7)) - 3;
    }
    const IntMatrix b = kernel_basis(d, IntVector::Ones(n));
    CHECK((d * b).isZero());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d.cast<double>());
    CHECK(b.cols() == n - lu.rank());
    // Every small integer kernel vector has integer coordinates in the basis.
    IntVector x = IntVector::Zero(n);
    std::function<void(Eigen::Index)> rec = [&](Eigen::Index j) {
      if (j == n) {
        if (!(d * x).isZero()) return;
        auto c = solve_exact(b.cast<Rational>(), x.cast<Rational>());
        REQUIRE(c.has_value());
        for (Eigen::Index k = 0; k < c->size(); ++k) CHECK(denominator((*c)[k]) == 1);
        return;
      }
      for (std::int64_t v = -3; v <= 3; ++v) {
        x[j] = v;
        rec(j + 1);
      }
    };
    rec(0);
  }
}

TEST_CASE("column hermite form: d U = H, U unimodular") {
  IntMatrix d(2, 3);
  d << 2, 4, 6, 1, 3, 5;
  auto [h, u] = column_hermite(d);
  Matrix<BigInt> db(2, 3);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) db(i, j) = d(i, j);
  }
  CHECK(db * u == h);
  Matrix<Rational> ur(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) ur(i, j) = Rational(u(i, j));
  }
  const Rational det = ur.determinant();
  CHECK((det == 1 || det == -1));
}

TEST_CASE("nearest kernel point examples") {
  IntMatrix d(1, 2);
  d << 1, -1;
  auto p = cone_problem(d, vec({3, 1}));
  RationalVector v = nearest_kernel_point(p);
  CHECK(v[0] == 2);
  CHECK(v[1] == 2);
  IntMatrix e(1, 2);
  e << 1, 0;
  RationalVector w = nearest_kernel_point(cone_problem(e, vec({1, 5})));
  CHECK(w[0] == 0);
  CHECK(w[1] == 5);
  RationalVector same = nearest_kernel_point(cone_problem(d, vec({4, 4})));
  CHECK(same[0] == 4);
  CHECK(same[1] == 4);
}

TEST_CASE("integer kernel point examples") {
  IntMatrix d(1, 2);
  d << 1, -1;
  auto s = integer_kernel_point(cone_problem(d, vec({3, 1})));
  CHECK(s.lambda_prime == vec({2, 2}));
  CHECK(s.distance == 2);
  CHECK(s.certified_optimal);
  CHECK(*s.achieved_ratio == 1);
  auto z = integer_kernel_point(cone_problem(d, vec({1, 0})));
  CHECK(z.lambda_prime == vec({0, 0}));
  auto k = integer_kernel_point(cone_problem(d, vec({5, 5})));
  CHECK(k.lambda_prime == vec({5, 5}));
  CHECK(*k.achieved_ratio == 0);
  CHECK(!k.fallback);
}

TEST_CASE("integer kernel point agrees with exhaustive search") {
  Rng rng(21);
  for (int t = 0; t < 120; ++t) {
    const Eigen::Index m = 1 + Eigen::Index(rng.below(3)), n = 1 + Eigen::Index(rng.below(4));
    IntMatrix d(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) d(i, j) = std::int64_t(rng.below(7)) - 3;
    }
    IntVector lambda = IntVector::Zero(n);
    const std::int64_t budget = std::int64_t(rng.below(21));
    for (std::int64_t k = 0; k < budget; ++k) ++lambda[Eigen::Index(rng.below(std::uint64_t(n)))];
    auto p = cone_problem(d, lambda);
    auto s = integer_kernel_point(p);
    CHECK(check_solution(p, s).empty());
    const OracleBest best = exhaustive(p);
    REQUIRE(s.certified_optimal);
    CHECK(s.distance == best.distance);
    CHECK(s.lambda_prime == best.point);
  }
}

TEST_CASE("weighted problems from a graph of groups") {
  Rng rng(5);
  GogPtr gog = sl2z_gog();
  DGMatrix d = dg_matrix(*gog);
  BasisPtr b = d.cols;
  for (int t = 0; t < 30; ++t) {
    IntVector lambda(7);
    for (Eigen::Index k = 0; k < 7; ++k) lambda[k] = std::int64_t(rng.below(4));
    auto p = cone_problem(d, OrbitVector{b, lambda});
    auto s = integer_kernel_point(p);
    CHECK(check_solution(p, s).empty());
    CHECK(s.certified_optimal);
    const OracleBest best = exhaustive(p);
    CHECK(s.distance * p.source_scale == best.distance);
    // Scaling lambda cannot increase the achieved ratio: 10 lambda' is feasible.
    if (s.achieved_ratio && s.image_norm != 0) {
      auto p10 = cone_problem(d, OrbitVector{b, IntVector(10 * lambda)});
      auto s10 = integer_kernel_point(p10);
      CHECK(*s10.achieved_ratio <= *s.achieved_ratio);
    }
  }
}

TEST_CASE("pad_to_norm") {
  GogPtr gog = sl2z_gog();
  OrbitVector s = singleton_sharp(*gog);
  CHECK(s.coords == vec({0, 0, 1, 0, 0, 0, 1}));
  OrbitVector zero{s.basis, IntVector::Zero(7)};
  CHECK(pad_to_norm(zero, 7, s).coords == 7 * s.coords);
  // Two regular Z/4 orbits and two fixed points restrict to 4 free Z/2-orbits
  // and 2 fixed points, as do one regular Z/6 orbit, one orbit of degree 2 and
  // two fixed points.
  OrbitVector ten{s.basis, vec({2, 0, 2, 1, 0, 1, 2})};
  CHECK(norm(ten) == 10);
  CHECK(apply(dg_matrix(*gog), ten).coords.isZero());
  OrbitVector twelve = pad_to_norm(ten, 12, s);
  CHECK(twelve.coords == vec({2, 0, 4, 1, 0, 1, 4}));
  CHECK(apply(dg_matrix(*gog), twelve).coords.isZero());
  CHECK(pad_to_norm(ten, 10, s) == ten);
  CHECK_THROWS_AS(pad_to_norm(ten, 9, s), BadPad);
  OrbitVector half{s.basis, vec({0, 0, 1, 0, 0, 0, 0})};
  CHECK_THROWS_AS(pad_to_norm(half, 3, s), BadPad);
}

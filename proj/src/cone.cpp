#include "pstab/cone.hpp"

#include <algorithm>
#include <vector>

#include "pstab/hnf.hpp"
#include "pstab/simplex.hpp"

namespace pstab {
namespace {

using Lp = LinearProgram<Rational>;
using Sense = Lp::Sense;

std::int64_t weighted_l1(const IntVector& v, const IntVector& w) {
  return (v.array().abs() * w.array()).sum();
}

BigInt floor_of(const Rational& q) {
  const BigInt num = numerator(q), den = denominator(q);
  BigInt f = num / den;
  if (num % den != 0 && num < 0) f -= 1;
  return f;
}

BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

// Rows shared by every LP below over variables (v, p, q), each of length n:
// d v = 0 and v - p + q = target.
void add_core_rows(Lp& lp, const IntMatrix& d, const RationalVector& target) {
  const std::size_t n = std::size_t(d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    std::vector<Lp::Term> terms;
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (d(i, j) != 0) terms.emplace_back(std::size_t(j), Rational(d(i, j)));
    }
    if (!terms.empty()) lp.add_row(std::move(terms), Sense::Eq, Rational(0));
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp.add_row({{j, Rational(1)}, {n + j, Rational(-1)}, {2 * n + j, Rational(1)}}, Sense::Eq,
               target[Eigen::Index(j)]);
  }
}

// Branch-and-bound over x for the combined integer objective
//   (K dist(x) - norm(x)) L + lex(x),
// whose unique minimizer is the distance-first, norm-second, lexicographic
// optimum.
class Search {
 public:
  Search(const ConeProblem& p) : p_(p), n_(std::size_t(p.matrix.cols())) {
    total_ = weighted_l1(p.lambda, p.source_weights);
    k_ = BigInt(total_ + 1);
    lex_.resize(n_);
    BigInt scale = 1;
    for (std::size_t j = n_; j-- > 0;) {
      lex_[j] = scale;
      scale *= BigInt(total_ + 1);
    }
    l_ = scale;
  }

  BigInt objective(const IntVector& x) const {
    const IntVector diff = p_.lambda - x;
    BigInt v = (k_ * BigInt(weighted_l1(diff, p_.source_weights)) -
                BigInt(x.dot(p_.source_weights))) * l_;
    for (std::size_t j = 0; j < n_; ++j) v += lex_[j] * BigInt(x[Eigen::Index(j)]);
    return v;
  }

  bool feasible(const IntVector& x) const {
    return (x.array() >= 0).all() && (p_.matrix * x).isZero() &&
           x.dot(p_.source_weights) <= total_;
  }

  void offer(const IntVector& x) {
    if (!feasible(x)) return;
    BigInt v = objective(x);
    if (!have_ || v < best_value_) {
      have_ = true;
      best_value_ = v;
      best_ = x;
    }
  }

  void run() {
    struct Node {
      std::vector<std::int64_t> lo, hi;  // hi < 0 means unbounded
    };
    std::vector<Node> stack;
    stack.push_back({std::vector<std::int64_t>(n_, 0), std::vector<std::int64_t>(n_, -1)});
    while (!stack.empty()) {
      if (nodes_ >= p_.budget) return;
      Node node = std::move(stack.back());
      stack.pop_back();
      ++nodes_;
      const auto r = solve_node(node.lo, node.hi);
      if (!r.optimal()) continue;
      if (have_ && ceil_of(r.objective) >= best_value_) continue;
      std::size_t branch = n_;
      for (std::size_t j = 0; j < n_ && branch == n_; ++j) {
        if (denominator(r.x[Eigen::Index(j)]) != 1) branch = j;
      }
      if (branch == n_) {
        IntVector x(static_cast<Eigen::Index>(n_));
        for (std::size_t j = 0; j < n_; ++j) {
          x[Eigen::Index(j)] = numerator(r.x[Eigen::Index(j)]).convert_to<std::int64_t>();
        }
        offer(x);
        continue;
      }
      const Rational& value = r.x[Eigen::Index(branch)];
      const std::int64_t f = floor_of(value).convert_to<std::int64_t>();
      Node down = node, up = node;
      down.hi[branch] = f;
      up.lo[branch] = f + 1;
      // Explore the nearer side first (pushed last).
      if (value - Rational(f) < Rational(1, 2)) {
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));
      } else {
        stack.push_back(std::move(down));
        stack.push_back(std::move(up));
      }
    }
    complete_ = true;
  }

  bool have() const { return have_; }
  const IntVector& best() const { return best_; }
  bool complete() const { return complete_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  LpResult<Rational> solve_node(const std::vector<std::int64_t>& lo,
                                const std::vector<std::int64_t>& hi) const {
    Lp lp(3 * n_);
    RationalVector target(static_cast<Eigen::Index>(n_));
    for (std::size_t j = 0; j < n_; ++j) target[Eigen::Index(j)] = Rational(p_.lambda[Eigen::Index(j)]);
    add_core_rows(lp, p_.matrix, target);
    std::vector<Lp::Term> norm_row;
    for (std::size_t j = 0; j < n_; ++j) {
      norm_row.emplace_back(j, Rational(p_.source_weights[Eigen::Index(j)]));
    }
    lp.add_row(std::move(norm_row), Sense::Le, Rational(total_));
    for (std::size_t j = 0; j < n_; ++j) {
      if (lo[j] > 0) lp.add_row({{j, Rational(1)}}, Sense::Ge, Rational(lo[j]));
      if (hi[j] >= 0) lp.add_row({{j, Rational(1)}}, Sense::Le, Rational(hi[j]));
    }
    const Rational kl = Rational(k_ * l_);
    for (std::size_t j = 0; j < n_; ++j) {
      const Rational w(p_.source_weights[Eigen::Index(j)]);
      lp.set_cost(j, Rational(lex_[j]) - w * Rational(l_));
      lp.set_cost(n_ + j, kl * w);
      lp.set_cost(2 * n_ + j, kl * w);
    }
    auto r = lp.solve();
    if (r.optimal()) r.x.conservativeResize(Eigen::Index(n_));
    return r;
  }

  const ConeProblem& p_;
  std::size_t n_;
  std::int64_t total_ = 0;
  BigInt k_, l_;
  std::vector<BigInt> lex_;
  bool have_ = false;
  BigInt best_value_;
  IntVector best_;
  bool complete_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace

void ConeProblem::validate() const {
  const Eigen::Index n = matrix.cols();
  if (lambda.size() != n || source_weights.size() != n) throw Incompatible("lambda or weights length");
  if (target_weights.size() != matrix.rows()) throw Incompatible("target weights length");
  if ((source_weights.array() <= 0).any() || (target_weights.array() <= 0).any()) {
    throw Incompatible("weights must be positive");
  }
  if (source_scale <= 0 || target_scale <= 0) throw Incompatible("scales must be positive");
  if ((lambda.array() < 0).any()) throw Incompatible("lambda is not in the positive cone");
}

Rational ConeProblem::source_norm(const IntVector& v) const {
  return Rational(weighted_l1(v, source_weights), source_scale);
}

Rational ConeProblem::target_norm(const IntVector& v) const {
  return Rational(weighted_l1(v, target_weights), target_scale);
}

ConeProblem cone_problem(const DGMatrix& d, const OrbitVector& lambda, std::uint64_t budget) {
  if (!(*lambda.basis == *d.cols)) throw Incompatible("lambda is not over the column basis");
  ConeProblem p;
  p.matrix = d.matrix;
  p.source_weights = d.cols->degrees();
  p.target_weights = d.rows->degrees();
  p.source_scale = std::max<std::int64_t>(1, std::int64_t(d.cols->blocks().size()));
  p.target_scale = std::max<std::int64_t>(1, std::int64_t(d.rows->blocks().size()));
  p.lambda = lambda.coords;
  p.basis = lambda.basis;
  p.budget = budget;
  return p;
}

ConeProblem cone_problem(const IntMatrix& matrix, const IntVector& lambda, std::uint64_t budget) {
  ConeProblem p;
  p.matrix = matrix;
  p.source_weights = IntVector::Ones(matrix.cols());
  p.target_weights = IntVector::Ones(matrix.rows());
  p.lambda = lambda;
  p.budget = budget;
  return p;
}

RationalVector nearest_kernel_point(const ConeProblem& problem, const RationalVector& target) {
  const std::size_t n = std::size_t(problem.matrix.cols());
  if (n == 0) return RationalVector(0);
  Lp first(3 * n);
  add_core_rows(first, problem.matrix, target);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational w(problem.source_weights[Eigen::Index(j)]);
    first.set_cost(n + j, w);
    first.set_cost(2 * n + j, w);
  }
  const auto r1 = first.solve();
  if (!r1.optimal()) throw InternalInvariantBroken("kernel LP is not solvable");

  // Among L1-optimal points, minimize the largest weighted deviation t.
  Lp second(3 * n + 1);
  add_core_rows(second, problem.matrix, target);
  std::vector<Lp::Term> l1;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational w(problem.source_weights[Eigen::Index(j)]);
    l1.emplace_back(n + j, w);
    l1.emplace_back(2 * n + j, w);
    second.add_row({{n + j, w}, {2 * n + j, w}, {3 * n, Rational(-1)}}, Sense::Le, Rational(0));
  }
  second.add_row(std::move(l1), Sense::Le, r1.objective);
  second.set_cost(3 * n, Rational(1));
  const auto r2 = second.solve();
  const auto& x = r2.optimal() ? r2.x : r1.x;
  return x.head(Eigen::Index(n));
}

RationalVector nearest_kernel_point(const ConeProblem& problem) {
  problem.validate();
  return nearest_kernel_point(problem, problem.lambda.cast<Rational>());
}

ConeSolution integer_kernel_point(const ConeProblem& problem) {
  problem.validate();
  ConeSolution s;
  s.basis = problem.basis;
  const IntVector image = problem.matrix * problem.lambda;
  s.image_norm = problem.target_norm(image);
  s.theta = 0;
  s.kernel_basis_norm = 0;
  s.relaxed_distance = 0;

  if (image.isZero()) {
    s.lambda_prime = problem.lambda;
    s.certified_optimal = true;
  } else {
    const IntMatrix basis = kernel_basis(problem.matrix, problem.source_weights);
    std::int64_t a = 0;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
      a = std::max(a, weighted_l1(basis.col(k), problem.source_weights));
    }
    s.kernel_basis_norm = Rational(a, problem.source_scale);
    const Rational lambda_norm = problem.source_norm(problem.lambda);
    s.theta = std::min(Rational(1), (s.image_norm + s.kernel_basis_norm) / lambda_norm);

    const RationalVector shrunk = problem.lambda.cast<Rational>() * (Rational(1) - s.theta);
    const RationalVector v2 = nearest_kernel_point(problem, shrunk);
    Rational relaxed = 0;
    for (Eigen::Index j = 0; j < v2.size(); ++j) {
      relaxed += abs(shrunk[j] - v2[j]) * Rational(problem.source_weights[j]);
    }
    s.relaxed_distance = relaxed / Rational(problem.source_scale);

    Search search(problem);
    search.offer(IntVector::Zero(problem.matrix.cols()));
    if (basis.cols() > 0) {
      // Round v'' in kernel-lattice coordinates.
      if (auto c = solve_exact(basis.cast<Rational>(), v2)) {
        IntVector rounded(basis.cols());
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
          rounded[k] = floor_of((*c)[k] + Rational(1, 2)).convert_to<std::int64_t>();
        }
        const IntVector x = basis * rounded;
        s.rounded_incumbent = search.feasible(x);
        search.offer(x);
      }
    }
    search.run();
    s.lambda_prime = search.best();
    s.nodes = search.nodes();
    s.certified_optimal = search.complete();
    s.fallback = !search.complete() && s.lambda_prime.isZero();
  }

  s.distance = problem.source_norm(problem.lambda - s.lambda_prime);
  s.in_kernel = (problem.matrix * s.lambda_prime).isZero();
  s.in_cone = (s.lambda_prime.array() >= 0).all();
  s.norm_nonincreasing = problem.source_norm(s.lambda_prime) <= problem.source_norm(problem.lambda);
  if (s.image_norm != 0) {
    s.achieved_ratio = s.distance / s.image_norm;
  } else if (s.distance == 0) {
    s.achieved_ratio = Rational(0);
  }
  return s;
}

OrbitVector pad_to_norm(const OrbitVector& lambda2, std::int64_t target, const OrbitVector& singleton) {
  if (!(*lambda2.basis == *singleton.basis)) throw BadPad("singleton vector over a different basis");
  if (norm(singleton) != 1) throw BadPad("singleton vector does not have norm 1");
  const Rational gap = Rational(target) - norm(lambda2);
  if (gap < 0) throw BadPad("target " + std::to_string(target) + " is below the norm " + to_string(norm(lambda2)));
  if (denominator(gap) != 1) throw BadPad("gap " + to_string(gap) + " is not an integer");
  const std::int64_t k = numerator(gap).convert_to<std::int64_t>();
  return {lambda2.basis, lambda2.coords + k * singleton.coords};
}

std::string check_solution(const ConeProblem& problem, const ConeSolution& solution) {
  const IntVector& x = solution.lambda_prime;
  if (x.size() != problem.lambda.size()) return "wrong length";
  if (!(problem.matrix * x).isZero()) return "not in the kernel";
  if ((x.array() < 0).any()) return "not in the cone";
  if (problem.source_norm(x) > problem.source_norm(problem.lambda)) return "norm increased";
  if (solution.distance != problem.source_norm(problem.lambda - x)) return "distance misreported";
  return {};
}

}  // namespace pstab

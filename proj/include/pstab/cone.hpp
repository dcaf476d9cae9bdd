#pragma once

#include <cstdint>
#include <optional>

#include "pstab/lattice.hpp"
#include "pstab/types.hpp"

namespace pstab {

inline constexpr std::uint64_t kDefaultConeBudget = 1'000'000;

// Nearest-point problem in the positive orthant of ker(matrix). Norms on both
// sides are weighted L1 norms divided by a scale (the block count for Lambda_V
// and Lambda_E, 1 for plain matrices).
struct ConeProblem {
  IntMatrix matrix;
  IntVector source_weights;
  IntVector target_weights;
  std::int64_t source_scale = 1;
  std::int64_t target_scale = 1;
  IntVector lambda;
  BasisPtr basis;  // optional, carried through to the solution
  std::uint64_t budget = kDefaultConeBudget;

  /// Checks shapes, positive weights and lambda >= 0. Throws Incompatible.
  void validate() const;
  Rational source_norm(const IntVector& v) const;
  Rational target_norm(const IntVector& v) const;
};

/// Problem for d_G with Lambda_V / Lambda_E norms.
ConeProblem cone_problem(const DGMatrix& d, const OrbitVector& lambda,
                         std::uint64_t budget = kDefaultConeBudget);
/// Plain matrix, unit weights, unit scales.
ConeProblem cone_problem(const IntMatrix& matrix, const IntVector& lambda,
                         std::uint64_t budget = kDefaultConeBudget);

struct ConeSolution {
  IntVector lambda_prime;
  BasisPtr basis;
  Rational distance;  // ||lambda - lambda'||_1
  Rational image_norm;  // ||d lambda||_2
  bool in_kernel = false;
  bool in_cone = false;
  bool norm_nonincreasing = false;
  /// distance / ||d lambda||_2, 0 when both vanish; empty marks an infinite
  /// ratio, which the contract rules out.
  std::optional<Rational> achieved_ratio;

  // Diagnostics of the construction.
  Rational theta;
  Rational kernel_basis_norm;  // the constant A
  Rational relaxed_distance;   // ||(1-theta) lambda - v''||_1 of the LP stage
  bool rounded_incumbent = false;  // rounding v'' gave a feasible start
  bool certified_optimal = false;  // search finished within budget
  bool fallback = false;           // returned 0 because nothing better was found
  std::uint64_t nodes = 0;

  OrbitVector as_orbit_vector() const { return {basis, lambda_prime}; }
};

/// v'' in the rational cone C intersected with ker(matrix), minimizing the
/// weighted L1 distance to `target`; ties broken by the smallest largest
/// weighted coordinate deviation.
RationalVector nearest_kernel_point(const ConeProblem& problem, const RationalVector& target);
RationalVector nearest_kernel_point(const ConeProblem& problem);

/// Integer lambda' >= 0 in ker(matrix) with ||lambda'||_1 <= ||lambda||_1,
/// minimizing ||lambda - lambda'||_1. Ties prefer the larger norm, then the
/// lexicographically least vector.
ConeSolution integer_kernel_point(const ConeProblem& problem);

/// lambda'' + (target - ||lambda''||_V) s. Throws BadPad when the gap is
/// negative or not an integer.
OrbitVector pad_to_norm(const OrbitVector& lambda2, std::int64_t target, const OrbitVector& singleton);

/// Independent re-check of the solution invariants; returns an empty string
/// or a description of the first failure.
std::string check_solution(const ConeProblem& problem, const ConeSolution& solution);

}  // namespace pstab

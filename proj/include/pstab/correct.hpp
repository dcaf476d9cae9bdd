#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pstab/action.hpp"
#include "pstab/cone.hpp"
#include "pstab/gog.hpp"
#include "pstab/lattice.hpp"

namespace pstab {

/// Whether the inequality preconditions of realize_action throw or are only
/// reported. Algebraic preconditions (kernel, cone, norm) always throw.
enum class Checks { Strict, Lenient };

struct VertexFix {
  FiniteAction action;
  Rational distance;  // d_{X,G}(rho, rho')
  Rational delta;
  Rational bound;     // 2 |H| |G|^2 delta
  bool bound_holds = false;
  std::size_t kept_points = 0;  // |Y_1|
};

/// Smallest delta meeting both inequality preconditions of fix_vertex_action:
/// max(d_{X,H}(rho o i, phi), ||rho^# - lambda'||_G / ||rho^#||_G).
Rational admissible_delta(const FiniteAction& phi, const GroupHom& i, const FiniteAction& rho,
                          const IntVector& lambda_prime);

/// rho' with rho' o i = phi, rho'^# = lambda' and d_{X,G}(rho, rho') <= 2|H||G|^2 delta.
/// Keeps rho on an invariant set Y_1 inside the agreement set and rebuilds the
/// rest with extend_action. Throws PreconditionFailed when i*(lambda') != phi#
/// or an inequality precondition fails for the given delta.
VertexFix fix_vertex_action(const FiniteAction& phi, const GroupHom& i, const FiniteAction& rho,
                            const IntVector& lambda_prime, const Rational& delta);

struct VertexStage {
  VertexId vertex;
  std::optional<EdgeId> tree_edge;  // edge e with t(e) = vertex used for phi
  VertexFix fix;
};

struct Realization {
  AlmostAction action;
  std::vector<VertexStage> vertex_stages;      // tree BFS order
  std::vector<Rational> letter_distances;      // per orientation position
  std::vector<std::size_t> letter_kept_points; // |X_e|, all points for tree edges
  bool precondition_holds = false;             // ||lambda - lambda'||_V <= delta ||lambda||_V
};

/// Rebuild in two steps: honest vertex actions along the spanning tree,
/// then stable letters. Output has defect 0 and sharp lambda'.
Realization realize_action(const AlmostAction& rho, const OrbitVector& lambda_prime,
                           Checks checks = Checks::Strict);

struct CorrectionReport {
  Rational input_defect;
  AlmostAction output;
  Rational output_defect;
  Rational distance;  // d_{X,S_G}(rho, rho')
  /// distance / input_defect when the defect is positive.
  std::optional<Rational> stability_ratio;

  OrbitVector lambda;
  Rational kernel_defect;
  Rational kernel_defect_bound;  // 2 max|G_e|^2 delta |X|
  bool kernel_bound_holds = false;

  ConeSolution cone;
  OrbitVector lambda_double_prime;
  OrbitVector lambda_prime;
  std::int64_t padding = 0;  // copies of the singleton vector added

  Realization realization;
  Rational vertex_distance;  // sum over vertices of d_{X,G_v}
  Rational letter_distance;  // sum over letters of d_X
  bool vertex_bounds_hold = false;
  bool precondition_holds = false;
};

struct StabilizeOptions {
  std::uint64_t budget = kDefaultConeBudget;
};

/// Full pipeline: sharp, kernel-defect check, cone, padding, realization.
CorrectionReport stabilize(const AlmostAction& rho, const StabilizeOptions& options = {});

}  // namespace pstab

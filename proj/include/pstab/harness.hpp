#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pstab/correct.hpp"
#include "pstab/gog.hpp"
#include "pstab/lattice.hpp"
#include "pstab/rng.hpp"
#include "pstab/schreier.hpp"

namespace pstab {

/// Nonzero points of the cone-kernel with common block norm at most
/// `max_norm` that are not a sum of two smaller such points. Always contains
/// the singleton vector. Throws TooLarge past `limit` candidates.
std::vector<OrbitVector> kernel_cone_generators(const GraphOfGroups& gog, std::int64_t max_norm,
                                                std::size_t limit = 200'000);

/// Honest action of the given degree: a random sum of cone-kernel generators
/// padded with singletons, realized from the trivial action, then relabelled,
/// with random equivariant choices for the non-tree letters.
AlmostAction random_honest_action(const GogPtr& gog, std::size_t degree, std::uint64_t seed);

struct PerturbModel {
  enum class Kind { Transpositions, Rate, Vertex, Mixed, Retype };
  Kind kind = Kind::Transpositions;
  std::size_t count = 1;  // transpositions or retyped orbits
  double rate = 0.0;      // per point and letter (Rate)

  std::string describe() const;
};

struct Perturbed {
  AlmostAction action;
  std::size_t edits = 0;  // transpositions applied, or points retyped
};

/// Letters composed with random transpositions; Vertex conjugates a random
/// vertex action by a transposition; Mixed alternates the two; Rate swaps
/// the image of each point of each letter with probability `rate`; Retype
/// changes the orbit type of one orbit of a random vertex action per count,
/// so the orbit-type vector leaves the kernel.
Perturbed perturb(const AlmostAction& rho, const PerturbModel& model, std::uint64_t seed);

/// Calls `visit` on every honest action of the given degree. Requires
/// degree <= 6 and vertex groups of order <= 6; throws TooLarge otherwise.
void for_each_honest_action(const GogPtr& gog, std::size_t degree,
                            const std::function<void(const AlmostAction&)>& visit);
std::vector<AlmostAction> brute_force_actions(const GogPtr& gog, std::size_t degree);

// Schreier graphs with an automorphism of order dividing n.
struct SchreierPair {
  SchreierGraph graph;
  AlmostAutomorphism alpha;
};

/// Random F_d x Z/n action on m points read as (A, alpha).
SchreierPair random_honest_schreier(std::size_t rank, std::size_t n, std::size_t vertices,
                                    std::uint64_t seed);

/// k perturbations, each either a swap of two targets of one label (two
/// edges) or a swap of two alpha images (two vertices). The edge map keeps
/// the original, so the result is weak.
SchreierPair perturb_schreier(const SchreierPair& honest, std::size_t k, std::uint64_t seed);

struct TrialConfig {
  std::string gog;
  std::size_t degree = 12;
  PerturbModel model;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  std::uint64_t budget = kDefaultConeBudget;

  void validate() const;
};

struct TrialRecord {
  std::string gog;
  std::size_t degree = 0;
  std::string model;
  std::uint64_t seed = 0;
  Rational delta;
  Rational kernel_defect;
  std::optional<Rational> cone_ratio;
  Rational distance;
  double runtime_ms = 0;
  bool fallback = false;
  bool output_exact = false;
  bool kernel_bound_holds = false;
  bool vertex_bounds_hold = false;
  bool precondition_holds = false;
};

/// One record per trial; trial t uses seed Rng::derive(config.seed, t).
std::vector<TrialRecord> run_trials(const TrialConfig& config);
TrialRecord run_trial(const GogPtr& gog, std::size_t degree, const PerturbModel& model, std::uint64_t seed,
                      std::uint64_t budget);

void write_csv_header(std::ostream& out);
void write_csv(std::ostream& out, const TrialRecord& record);

}  // namespace pstab

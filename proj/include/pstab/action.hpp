#pragma once

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "pstab/group.hpp"
#include "pstab/perm.hpp"
#include "pstab/types.hpp"

namespace pstab {

class Rng;

// An action of a finite group on {0, ..., degree-1}, stored as the image of
// every group element. Construction checks that the images respect the
// multiplication table.
class FiniteAction {
 public:
  FiniteAction(GroupPtr group, std::vector<Perm> element_images);

  /// Extends generator images to the whole group; throws NotAnAction when
  /// the assignment does not define a homomorphism.
  static FiniteAction from_generators(GroupPtr group, std::size_t degree,
                                      const std::vector<std::pair<Element, Perm>>& generators);
  static FiniteAction trivial(GroupPtr group, std::size_t degree);
  /// The transitive coset action of a catalogue class.
  static FiniteAction coset(GroupPtr group, std::size_t class_index);
  /// Disjoint union of coset models with the given multiplicities, in basis order.
  static FiniteAction model(GroupPtr group, const IntVector& counts);

  const GroupPtr& group() const { return group_; }
  std::size_t degree() const { return degree_; }
  const Perm& operator()(Element g) const { return images_[g]; }
  const std::vector<Perm>& images() const { return images_; }

  /// rho o i, an action of the source of i.
  FiniteAction pullback(const GroupHom& i) const;

  friend bool operator==(const FiniteAction& a, const FiniteAction& b) {
    return a.group_ == b.group_ && a.images_ == b.images_;
  }

 private:
  GroupPtr group_;
  std::size_t degree_ = 0;
  std::vector<Perm> images_;
};

struct Orbit {
  std::vector<Point> points;  // sorted
  std::size_t class_index = 0;
};

/// Orbits of the points in `within` (all points if empty), ordered by lowest point.
std::vector<Orbit> orbit_decompose(const FiniteAction& rho, const PointSet& within = {});

/// Point stabilizer as an element mask.
ElementMask stabilizer(const FiniteAction& rho, Point x);

/// Orbit-type vector rho^# in Lambda_G (coordinates over the class basis),
/// optionally restricted to an invariant subset.
IntVector orbit_counts(const FiniteAction& rho, const PointSet& within = {});

/// Largest rho(G)-invariant subset of Y obtained by deleting every orbit that
/// meets X - Y. Satisfies |X - Y'| <= |G| |X - Y|.
PointSet invariant_shrink(const FiniteAction& rho, const PointSet& y);

/// Same, for the group generated by an arbitrary list of permutations.
PointSet invariant_shrink(std::span<const Perm> generators, const PointSet& y);

/// True if the subset is invariant under every element.
bool is_invariant(const FiniteAction& rho, const PointSet& y);

/// d_{X,G}(a, b) = sum over g of d_X(a(g), b(g)).
Rational action_distance(const FiniteAction& a, const FiniteAction& b);

/// An equivariant bijection from the points of `from_set` (invariant under
/// `from`) onto the points of `to_set` (invariant under `to`), both actions of
/// the same group. Orbits of equal type are paired in lowest-point order; the
/// lowest point of a source orbit goes to the lowest target point with the
/// same stabilizer. With an Rng the pairing and base points are randomized.
/// Returns a full-length map with entries only on `from_set`; throws
/// Incompatible when the two restricted actions are not isomorphic.
std::vector<Point> equivariant_matching(const FiniteAction& from, const PointSet& from_set,
                                        const FiniteAction& to, const PointSet& to_set,
                                        Rng* rng = nullptr);

/// extend_action: an action rho of G on phi's points with rho^# = lambda and
/// rho o i = phi. Throws Incompatible unless i*(lambda) = phi^# and the
/// degrees agree.
FiniteAction extend_action(const FiniteAction& phi, const GroupHom& i, const IntVector& lambda);

/// Sub-action on an invariant subset, relabelled 0..k-1 in increasing order.
/// Returns the action and the list of original points.
std::pair<FiniteAction, std::vector<Point>> restrict_action(const FiniteAction& rho,
                                                            const PointSet& subset);

/// Conjugate every image by a relabelling pi of the points.
FiniteAction relabel(const FiniteAction& rho, const Perm& pi);

PointSet full_set(std::size_t n);
std::size_t count(const PointSet& s);

}  // namespace pstab

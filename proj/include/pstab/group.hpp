#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pstab/perm.hpp"
#include "pstab/types.hpp"

namespace pstab {

/// Largest group order for which the subgroup catalogue is built.
inline constexpr std::size_t kMaxCatalogueOrder = 255;

/// Bitmask of group elements; large enough for kMaxCatalogueOrder.
using ElementMask = std::array<std::uint64_t, 4>;

/// A transitive action type: the conjugacy class of a point stabilizer.
struct TransClass {
  std::size_t index = 0;             // position in the group's ordered basis
  std::vector<Element> stabilizer;   // lexicographically least conjugate
  std::size_t degree = 0;            // index [G : stabilizer]

  friend bool operator==(const TransClass&, const TransClass&) = default;
};

// Left-coset model G/K of a transitive class. Point 0 is the coset K itself,
// so its stabilizer is exactly the canonical representative.
struct CosetModel {
  std::vector<Element> representatives;  // lowest element of each coset
  std::vector<Perm> action;              // per group element, on cosets
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A finite group given by its multiplication table. Element 0 is the identity.
// Immutable after construction; groups up to kMaxCatalogueOrder carry their
// catalogue of transitive classes (conjugacy classes of subgroups).
class FiniteGroup {
 public:
  /// Validates a Cayley table and relocates the identity to index 0.
  static GroupPtr from_table(const std::vector<std::vector<Element>>& table,
                             std::vector<std::string> labels = {});

  std::size_t order() const { return order_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  std::size_t element_order(Element a) const;
  /// Greedy generating set (lowest ids first).
  const std::vector<Element>& generators() const { return generators_; }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Element a) const;
  /// Element with the given label, or a decimal element id.
  Element parse_element(const std::string& text) const;

  std::vector<std::vector<Element>> table() const;

  bool has_catalogue() const { return order_ <= kMaxCatalogueOrder; }
  /// Ordered basis of Trans(G): degree descending, then stabilizer encoding.
  const std::vector<TransClass>& classes() const;
  const TransClass& trans_class(std::size_t index) const { return classes().at(index); }
  const CosetModel& coset_model(std::size_t index) const;
  /// Class index of the conjugacy class containing a subgroup.
  std::size_t class_of_subgroup(const ElementMask& subgroup) const;
  /// Index of the class of the trivial action on one point.
  std::size_t trivial_class() const { return classes().size() - 1; }

  bool same_table(const FiniteGroup& other) const { return table_ == other.table_; }

 private:
  FiniteGroup() = default;
  void build_catalogue();

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::vector<Element> generators_;

  std::vector<TransClass> classes_;
  std::vector<CosetModel> models_;
  std::map<ElementMask, std::size_t> subgroup_to_class_;
};

// Common constructions.
GroupPtr trivial_group();
GroupPtr cyclic_group(std::size_t n);
GroupPtr symmetric_group(std::size_t k);
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

/// validate_group: same as FiniteGroup::from_table.
GroupPtr validate_group(const std::vector<std::vector<Element>>& table,
                        std::vector<std::string> labels = {});

/// Ordered list of transitive classes (the fixed basis of Lambda_G).
const std::vector<TransClass>& subgroup_classes(const FiniteGroup& g);

// Element masks.
ElementMask mask_of(std::span<const Element> elements);
std::vector<Element> elements_of(const ElementMask& mask);
inline bool mask_test(const ElementMask& m, Element e) { return (m[e >> 6] >> (e & 63)) & 1U; }
inline void mask_set(ElementMask& m, Element e) { m[e >> 6] |= std::uint64_t{1} << (e & 63); }

/// Subgroup generated by a set of elements.
std::vector<Element> generated_subgroup(const FiniteGroup& g, std::span<const Element> generators);

/// Small generating set, chosen greedily by lowest element id.
std::vector<Element> generating_set(const FiniteGroup& g);

// A homomorphism between finite groups.
class GroupHom {
 public:
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> image);

  static GroupHom identity(const GroupPtr& g);
  /// The homomorphism sending everything to the identity.
  static GroupHom trivial(const GroupPtr& source, const GroupPtr& target);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  Element operator()(Element h) const { return image_[h]; }
  const std::vector<Element>& image() const { return image_; }
  bool injective() const { return injective_; }

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Element> image_;
  bool injective_ = false;
};

}  // namespace pstab

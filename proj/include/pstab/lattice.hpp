#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pstab/action.hpp"
#include "pstab/gog.hpp"
#include "pstab/group.hpp"
#include "pstab/types.hpp"

namespace pstab {

// Ordered basis of Lambda_G, Lambda_V or Lambda_E: the concatenation of the
// class bases of one group per block (vertex or oriented edge). Norms average
// the per-block degree-weighted L1 norms over the blocks.
class LatticeBasis {
 public:
  enum class Kind { Group, Vertex, Edge };

  struct Block {
    std::size_t id;  // vertex id or oriented edge id; 0 for a single group
    GroupPtr group;
    std::size_t offset;
  };

  struct Coordinate {
    std::size_t block;
    std::size_t class_index;
    std::size_t degree;
  };

  static std::shared_ptr<const LatticeBasis> for_group(const GroupPtr& g);
  static std::shared_ptr<const LatticeBasis> vertices(const GraphOfGroups& gog);
  /// Blocks follow the orientation order.
  static std::shared_ptr<const LatticeBasis> edges(const GraphOfGroups& gog);

  Kind kind() const { return kind_; }
  std::size_t size() const { return coordinates_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Coordinate>& coordinates() const { return coordinates_; }
  std::size_t block_size(std::size_t b) const { return blocks_[b].group->classes().size(); }
  /// Degree of every coordinate: the weights of the norm.
  IntVector degrees() const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b);

 private:
  static std::shared_ptr<const LatticeBasis> build(Kind kind, std::vector<Block> blocks);

  Kind kind_ = Kind::Group;
  std::vector<Block> blocks_;
  std::vector<Coordinate> coordinates_;
};

using BasisPtr = std::shared_ptr<const LatticeBasis>;

struct OrbitVector {
  BasisPtr basis;
  IntVector coords;

  bool in_cone() const { return (coords.array() >= 0).all(); }
  IntVector block(std::size_t b) const;
  friend bool operator==(const OrbitVector& a, const OrbitVector& b) {
    return *a.basis == *b.basis && a.coords == b.coords;
  }
};

OrbitVector operator+(const OrbitVector& a, const OrbitVector& b);
OrbitVector operator-(const OrbitVector& a, const OrbitVector& b);

/// Norm ||.||_G, ||.||_V or ||.||_E: sum of |coord| * degree over the block
/// count.
Rational norm(const OrbitVector& v);
/// Unaveraged norm of one block.
std::int64_t block_norm(const OrbitVector& v, std::size_t b);

/// rho^# for the vertex actions of an almost action (Lambda_V coordinates).
OrbitVector sharp(const AlmostAction& rho);
OrbitVector sharp(const GraphOfGroups& gog, const std::vector<FiniteAction>& vertex_actions);
/// rho^# in Lambda_G.
OrbitVector sharp(const FiniteAction& rho);

/// Orbit vector of the action on one point (the trivial class at every vertex).
OrbitVector singleton_sharp(const GraphOfGroups& gog);

/// Matrix of i* : Lambda_G -> Lambda_H, rows over H's classes and columns over
/// G's classes. Column chi is the orbit vector of the coset model of chi
/// restricted along i.
IntMatrix pullback(const GroupHom& i);

// Matrix of d_G : Lambda_V -> Lambda_E, with
// (d lambda)_e = i_e*(lambda_{t(e)}) - i_bar(e)*(lambda_{o(e)}) per oriented edge.
struct DGMatrix {
  struct BlockTag {
    std::size_t row_block;
    std::size_t column_block;
    int sign;          // +1 for i_e*, -1 for i_bar(e)*
    EdgeId edge;       // the edge whose inclusion contributes
  };

  IntMatrix matrix;
  BasisPtr rows;
  BasisPtr cols;
  std::vector<BlockTag> provenance;
};

DGMatrix dg_matrix(const GraphOfGroups& gog);

OrbitVector apply(const DGMatrix& d, const OrbitVector& lambda);

/// ||d_G(rho^#)||_E.
Rational kernel_defect(const AlmostAction& rho);
Rational kernel_defect(const DGMatrix& d, const AlmostAction& rho);

/// Proof constant 2 max_e |G_e|^2 of the kernel-defect bound.
std::int64_t kernel_defect_constant(const GraphOfGroups& gog);

std::string describe(const LatticeBasis::Coordinate& c, const LatticeBasis& basis);

}  // namespace pstab

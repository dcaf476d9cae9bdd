#include "pstab/lattice.hpp"

namespace pstab {

BasisPtr LatticeBasis::build(Kind kind, std::vector<Block> blocks) {
  auto basis = std::shared_ptr<LatticeBasis>(new LatticeBasis());
  basis->kind_ = kind;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].offset = offset;
    for (const TransClass& c : blocks[b].group->classes()) {
      basis->coordinates_.push_back({b, c.index, c.degree});
    }
    offset += blocks[b].group->classes().size();
  }
  basis->blocks_ = std::move(blocks);
  return basis;
}

BasisPtr LatticeBasis::for_group(const GroupPtr& g) { return build(Kind::Group, {{0, g, 0}}); }

BasisPtr LatticeBasis::vertices(const GraphOfGroups& gog) {
  std::vector<Block> blocks;
  for (VertexId v = 0; v < gog.vertex_count(); ++v) blocks.push_back({v, gog.vertex_groups[v], 0});
  return build(Kind::Vertex, std::move(blocks));
}

BasisPtr LatticeBasis::edges(const GraphOfGroups& gog) {
  std::vector<Block> blocks;
  for (EdgeId e : gog.graph.orientation) blocks.push_back({e, gog.edge_groups[e], 0});
  return build(Kind::Edge, std::move(blocks));
}

IntVector LatticeBasis::degrees() const {
  IntVector d(Eigen::Index(coordinates_.size()));
  for (std::size_t k = 0; k < coordinates_.size(); ++k) d[Eigen::Index(k)] = std::int64_t(coordinates_[k].degree);
  return d;
}

bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
  if (&a == &b) return true;
  if (a.kind_ != b.kind_ || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t k = 0; k < a.blocks_.size(); ++k) {
    if (a.blocks_[k].id != b.blocks_[k].id || a.blocks_[k].group != b.blocks_[k].group) return false;
  }
  return true;
}

IntVector OrbitVector::block(std::size_t b) const {
  const auto& blk = basis->blocks()[b];
  return coords.segment(Eigen::Index(blk.offset), Eigen::Index(basis->block_size(b)));
}

OrbitVector operator+(const OrbitVector& a, const OrbitVector& b) {
  if (!(*a.basis == *b.basis)) throw Incompatible("orbit vectors over different bases");
  return {a.basis, a.coords + b.coords};
}

OrbitVector operator-(const OrbitVector& a, const OrbitVector& b) {
  if (!(*a.basis == *b.basis)) throw Incompatible("orbit vectors over different bases");
  return {a.basis, a.coords - b.coords};
}

std::int64_t block_norm(const OrbitVector& v, std::size_t b) {
  const auto& blk = v.basis->blocks()[b];
  std::int64_t total = 0;
  for (std::size_t k = 0; k < v.basis->block_size(b); ++k) {
    const auto idx = Eigen::Index(blk.offset + k);
    total += std::abs(v.coords[idx]) * std::int64_t(v.basis->coordinates()[std::size_t(idx)].degree);
  }
  return total;
}

Rational norm(const OrbitVector& v) {
  const std::size_t blocks = v.basis->blocks().size();
  if (blocks == 0) return Rational(0);
  std::int64_t total = 0;
  for (std::size_t b = 0; b < blocks; ++b) total += block_norm(v, b);
  return Rational(total, std::int64_t(blocks));
}

OrbitVector sharp(const GraphOfGroups& gog, const std::vector<FiniteAction>& vertex_actions) {
  BasisPtr basis = LatticeBasis::vertices(gog);
  IntVector coords = IntVector::Zero(Eigen::Index(basis->size()));
  std::size_t degree = vertex_actions.empty() ? 0 : vertex_actions.front().degree();
  for (VertexId v = 0; v < gog.vertex_count(); ++v) {
    if (vertex_actions[v].degree() != degree) throw DegreeMismatch("vertex actions of different degrees");
    const auto& blk = basis->blocks()[v];
    coords.segment(Eigen::Index(blk.offset), Eigen::Index(basis->block_size(v))) =
        orbit_counts(vertex_actions[v]);
  }
  return {basis, coords};
}

OrbitVector sharp(const AlmostAction& rho) { return sharp(*rho.gog, rho.vertex_actions); }

OrbitVector sharp(const FiniteAction& rho) {
  return {LatticeBasis::for_group(rho.group()), orbit_counts(rho)};
}

OrbitVector singleton_sharp(const GraphOfGroups& gog) {
  BasisPtr basis = LatticeBasis::vertices(gog);
  IntVector coords = IntVector::Zero(Eigen::Index(basis->size()));
  for (VertexId v = 0; v < gog.vertex_count(); ++v) {
    coords[Eigen::Index(basis->blocks()[v].offset + gog.vertex_groups[v]->trivial_class())] = 1;
  }
  return {basis, coords};
}

IntMatrix pullback(const GroupHom& i) {
  const GroupPtr& g = i.target();
  const GroupPtr& h = i.source();
  IntMatrix m(Eigen::Index(h->classes().size()), Eigen::Index(g->classes().size()));
  for (std::size_t c = 0; c < g->classes().size(); ++c) {
    m.col(Eigen::Index(c)) = orbit_counts(FiniteAction::coset(g, c).pullback(i));
  }
  return m;
}

DGMatrix dg_matrix(const GraphOfGroups& gog) {
  DGMatrix d;
  d.rows = LatticeBasis::edges(gog);
  d.cols = LatticeBasis::vertices(gog);
  d.matrix = IntMatrix::Zero(Eigen::Index(d.rows->size()), Eigen::Index(d.cols->size()));
  for (std::size_t r = 0; r < gog.oriented_edge_count(); ++r) {
    const EdgeId e = gog.graph.orientation[r];
    const EdgeId eb = gog.graph.bar[e];
    const auto row0 = Eigen::Index(d.rows->blocks()[r].offset);
    auto add = [&](EdgeId edge, int sign) {
      const VertexId v = gog.graph.terminus[edge];
      const IntMatrix p = pullback(gog.inclusions[edge]);
      const auto col0 = Eigen::Index(d.cols->blocks()[v].offset);
      d.matrix.block(row0, col0, p.rows(), p.cols()) += sign * p;
      d.provenance.push_back({r, v, sign, edge});
    };
    add(e, +1);
    add(eb, -1);
  }
  return d;
}

OrbitVector apply(const DGMatrix& d, const OrbitVector& lambda) {
  if (!(*lambda.basis == *d.cols)) throw Incompatible("vector is not over the column basis");
  return {d.rows, d.matrix * lambda.coords};
}

Rational kernel_defect(const DGMatrix& d, const AlmostAction& rho) {
  return norm(apply(d, sharp(rho)));
}

Rational kernel_defect(const AlmostAction& rho) { return kernel_defect(dg_matrix(*rho.gog), rho); }

std::int64_t kernel_defect_constant(const GraphOfGroups& gog) {
  std::int64_t m = 0;
  for (EdgeId e : gog.graph.orientation) m = std::max(m, std::int64_t(gog.edge_groups[e]->order()));
  return 2 * m * m;
}

std::string describe(const LatticeBasis::Coordinate& c, const LatticeBasis& basis) {
  const auto& blk = basis.blocks()[c.block];
  std::string where = basis.kind() == LatticeBasis::Kind::Edge ? "edge " : "vertex ";
  std::string s = where + std::to_string(blk.id) + " stabilizer {";
  const auto& stab = blk.group->trans_class(c.class_index).stabilizer;
  for (std::size_t k = 0; k < stab.size(); ++k) s += (k ? "," : "") + blk.group->label(stab[k]);
  return s + "} degree " + std::to_string(c.degree);
}

}  // namespace pstab

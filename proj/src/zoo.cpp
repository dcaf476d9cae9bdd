#include "pstab/zoo.hpp"

namespace pstab {

GogPtr sl2z_gog() {
  RawGog raw;
  raw.name = "sl2z";
  raw.vertex_groups = {cyclic_group(4), cyclic_group(6)};
  const GroupPtr z2 = cyclic_group(2);
  raw.edges = {{1, 0, 1, z2, {0, 3}}, {0, 1, 0, z2, {0, 2}}};
  return validate_gog(raw);
}

GogPtr free_times_cyclic_gog(std::size_t loops, std::size_t n) {
  RawGog raw;
  raw.name = "f" + std::to_string(loops) + "xz" + std::to_string(n);
  const GroupPtr g = cyclic_group(n);
  raw.vertex_groups = {g};
  std::vector<Element> id(n);
  for (std::size_t k = 0; k < n; ++k) id[k] = Element(k);
  for (std::size_t l = 0; l < loops; ++l) {
    const EdgeId e = 2 * l;
    raw.edges.push_back({e + 1, 0, 0, g, id});
    raw.edges.push_back({e, 0, 0, g, id});
  }
  return validate_gog(raw);
}

GogPtr free_product_gog(std::size_t a, std::size_t b) {
  RawGog raw;
  raw.name = "z" + std::to_string(a) + "*z" + std::to_string(b);
  raw.vertex_groups = {cyclic_group(a), cyclic_group(b)};
  const GroupPtr one = trivial_group();
  raw.edges = {{1, 0, 1, one, {0}}, {0, 1, 0, one, {0}}};
  return validate_gog(raw);
}

GogPtr two_edge_loop_gog() {
  RawGog raw;
  raw.name = "two-edge-loop";
  raw.vertex_groups = {cyclic_group(6), cyclic_group(2)};
  const GroupPtr z2 = cyclic_group(2), z3 = cyclic_group(3);
  raw.edges = {
      {1, 0, 1, z2, {0, 1}},     // into Z/2: identity
      {0, 1, 0, z2, {0, 3}},     // into Z/6: onto <3>
      {3, 0, 0, z3, {0, 2, 4}},  // loop, x -> 2x
      {2, 0, 0, z3, {0, 4, 2}},  // loop, x -> 4x
  };
  return validate_gog(raw);
}

GogPtr single_vertex_gog(const GroupPtr& g) {
  RawGog raw;
  raw.name = "vertex";
  raw.vertex_groups = {g};
  return validate_gog(raw);
}

std::vector<std::string> zoo_names() {
  return {"sl2z", "f2xz2", "f2xz3", "z2*z3", "two-edge-loop", "f1xz2"};
}

GogPtr gog_by_name(const std::string& name) {
  if (name == "sl2z") return sl2z_gog();
  if (name == "f2xz2") return free_times_cyclic_gog(2, 2);
  if (name == "f2xz3") return free_times_cyclic_gog(2, 3);
  if (name == "f1xz2") return free_times_cyclic_gog(1, 2);
  if (name == "z2*z3") return free_product_gog(2, 3);
  if (name == "two-edge-loop") return two_edge_loop_gog();
  throw ParseError("unknown graph of groups '" + name + "'");
}

}  // namespace pstab

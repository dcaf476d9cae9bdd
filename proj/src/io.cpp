#include "pstab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "pstab/zoo.hpp"

namespace pstab {
namespace {

namespace fs = std::filesystem;

Perm perm_from_json(const Json& j, std::size_t degree) {
  std::vector<Point> img;
  try {
    img = j.get<std::vector<Point>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("permutation: ") + e.what());
  }
  if (img.size() != degree || !is_permutation(img)) {
    throw ParseError("not a permutation of " + std::to_string(degree) + " points");
  }
  return Perm(std::move(img));
}

Json perm_to_json(const Perm& p) { return p.images(); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

Element element_from_json(const Json& j, const FiniteGroup& g) {
  if (j.is_string()) return g.parse_element(j.get<std::string>());
  if (!j.is_number_unsigned() || j.get<std::size_t>() >= g.order()) throw ParseError("bad group element");
  return Element(j.get<std::size_t>());
}

IntVector int_vector(const Json& j) {
  std::vector<std::int64_t> v;
  try {
    v = j.get<std::vector<std::int64_t>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("integer vector: ") + e.what());
  }
  return Eigen::Map<IntVector>(v.data(), Eigen::Index(v.size()));
}

Json int_vector_to_json(const IntVector& v) { return std::vector<std::int64_t>(v.data(), v.data() + v.size()); }

}  // namespace

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_json(const fs::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << value.dump(2) << '\n';
}

GroupPtr group_from_json(const Json& j, const fs::path& base) {
  if (j.is_string()) {
    const fs::path p = base / j.get<std::string>();
    return group_from_json(load_json(p), p.parent_path());
  }
  if (j.contains("cyclic")) return cyclic_group(field<std::size_t>(j, "cyclic"));
  if (j.contains("symmetric")) return symmetric_group(field<std::size_t>(j, "symmetric"));
  const auto table = field<std::vector<std::vector<Element>>>(j, "table");
  if (j.contains("order") && field<std::size_t>(j, "order") != table.size()) {
    throw ParseError("order does not match the table");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = field<std::vector<std::string>>(j, "labels");
  return validate_group(table, labels);
}

Json group_to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"table", g.table()}, {"labels", g.labels()}};
}

GogPtr gog_from_json(const Json& j, const fs::path& base) {
  if (j.is_string()) {
    const fs::path p = base / j.get<std::string>();
    return gog_from_json(load_json(p), p.parent_path());
  }
  if (j.contains("zoo")) return gog_by_name(field<std::string>(j, "zoo"));
  RawGog raw;
  if (j.contains("name")) raw.name = field<std::string>(j, "name");
  const Json vertices = field<Json>(j, "vertices");
  raw.vertex_groups.resize(vertices.size());
  std::vector<bool> seen(vertices.size(), false);
  for (const Json& v : vertices) {
    const auto id = field<std::size_t>(v, "id");
    if (id >= vertices.size() || seen[id]) throw ParseError("vertex ids must be 0..n-1");
    seen[id] = true;
    raw.vertex_groups[id] = group_from_json(field<Json>(v, "group"), base);
  }
  const Json edges = j.contains("edges") ? j.at("edges") : Json::array();
  raw.edges.resize(edges.size());
  std::vector<bool> seen_edge(edges.size(), false);
  for (const Json& e : edges) {
    const auto id = field<std::size_t>(e, "id");
    if (id >= edges.size() || seen_edge[id]) throw ParseError("edge ids must be 0..m-1");
    seen_edge[id] = true;
    RawEdge& r = raw.edges[id];
    r.bar = field<std::size_t>(e, "bar");
    r.origin = field<std::size_t>(e, "origin");
    r.terminus = field<std::size_t>(e, "terminus");
    if (r.terminus >= raw.vertex_groups.size()) throw ParseError("edge terminus out of range");
    r.edge_group = group_from_json(field<Json>(e, "edge_group"), base);
    for (const Json& x : field<Json>(e, "inclusion_to_terminus")) {
      r.inclusion_to_terminus.push_back(element_from_json(x, *raw.vertex_groups[r.terminus]));
    }
  }
  if (j.contains("tree")) raw.tree = field<std::vector<EdgeId>>(j, "tree");
  if (j.contains("orientation")) raw.orientation = field<std::vector<EdgeId>>(j, "orientation");
  return validate_gog(raw);
}

Json gog_to_json(const GraphOfGroups& gog) {
  Json vertices = Json::array(), edges = Json::array(), tree = Json::array();
  for (VertexId v = 0; v < gog.vertex_count(); ++v) {
    vertices.push_back({{"id", v}, {"group", group_to_json(*gog.vertex_groups[v])}});
  }
  for (EdgeId e = 0; e < gog.edge_count(); ++e) {
    edges.push_back({{"id", e},
                     {"bar", gog.graph.bar[e]},
                     {"origin", gog.graph.origin[e]},
                     {"terminus", gog.graph.terminus[e]},
                     {"edge_group", group_to_json(*gog.edge_groups[e])},
                     {"inclusion_to_terminus", gog.inclusions[e].image()}});
    if (gog.in_tree[e]) tree.push_back(e);
  }
  return {{"name", gog.name},   {"vertices", vertices}, {"edges", edges},
          {"tree", tree},       {"orientation", gog.graph.orientation}};
}

GogPtr load_gog(const std::string& name_or_path) {
  const auto names = zoo_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return gog_by_name(name_or_path);
  const fs::path p(name_or_path);
  return gog_from_json(load_json(p), p.parent_path());
}

AlmostAction action_from_json(const Json& j, const GogPtr& gog) {
  const auto degree = field<std::size_t>(j, "degree");
  std::map<std::pair<VertexId, Element>, Perm> images;
  if (j.contains("vertices")) {
    for (const Json& v : j.at("vertices")) {
      const auto id = field<std::size_t>(v, "id");
      if (id >= gog->vertex_count()) throw ParseError("vertex id out of range");
      const Json gens = v.contains("generators") ? v.at("generators") : Json::object();
      for (const auto& [key, perm] : gens.items()) {
        images[{id, gog->vertex_groups[id]->parse_element(key)}] = perm_from_json(perm, degree);
      }
    }
  }
  std::map<EdgeId, Perm> letters;
  if (j.contains("letters")) {
    for (const auto& [key, perm] : j.at("letters").items()) {
      std::size_t e = 0;
      try {
        e = std::stoul(key);
      } catch (const std::exception&) {
        throw ParseError("letter key '" + key + "' is not an edge id");
      }
      if (e >= gog->edge_count() || !gog->graph.oriented[e]) {
        throw ParseError("letter key '" + key + "' is not an oriented edge");
      }
      letters[e] = perm_from_json(perm, degree);
    }
  }
  return from_generator_images(gog, degree, images, letters);
}

Json action_to_json(const AlmostAction& rho) {
  Json vertices = Json::array(), letters = Json::object();
  for (VertexId v = 0; v < rho.vertex_actions.size(); ++v) {
    const FiniteAction& a = rho.vertex_actions[v];
    Json gens = Json::object();
    for (Element g : a.group()->generators()) gens[a.group()->label(g)] = perm_to_json(a(g));
    vertices.push_back({{"id", v}, {"generators", gens}});
  }
  for (std::size_t k = 0; k < rho.stable_letters.size(); ++k) {
    letters[std::to_string(rho.gog->graph.orientation[k])] = perm_to_json(rho.stable_letters[k]);
  }
  return {{"degree", rho.degree}, {"vertices", vertices}, {"letters", letters}};
}

Json rational_to_json(const Rational& q) { return to_string(q); }

Json basis_to_json(const LatticeBasis& b) {
  Json out = Json::array();
  const char* key = b.kind() == LatticeBasis::Kind::Edge ? "edge" : "vertex";
  for (const auto& c : b.coordinates()) {
    const auto& block = b.blocks()[c.block];
    out.push_back({{key, block.id},
                   {"stabilizer", block.group->trans_class(c.class_index).stabilizer},
                   {"degree", c.degree}});
  }
  return out;
}

Json orbit_vector_to_json(const OrbitVector& v) {
  return {{"coords", int_vector_to_json(v.coords)}, {"basis", basis_to_json(*v.basis)}, {"norm", rational_to_json(norm(v))}};
}

ConeProblem cone_problem_from_json(const Json& j, const fs::path& base) {
  const std::uint64_t budget = j.contains("budget") ? field<std::uint64_t>(j, "budget") : kDefaultConeBudget;
  const IntVector lambda = int_vector(field<Json>(j, "lambda"));
  if (j.contains("gog")) {
    const GogPtr gog = gog_from_json(j.at("gog"), base);
    const DGMatrix d = dg_matrix(*gog);
    if (lambda.size() != Eigen::Index(d.cols->size())) throw ParseError("lambda has the wrong length");
    return cone_problem(d, OrbitVector{d.cols, lambda}, budget);
  }
  const auto rows = field<std::vector<std::vector<std::int64_t>>>(j, "matrix");
  const std::size_t cols = rows.empty() ? std::size_t(lambda.size()) : rows.front().size();
  IntMatrix m(Eigen::Index(rows.size()), Eigen::Index(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(Eigen::Index(r), Eigen::Index(c)) = rows[r][c];
  }
  if (lambda.size() != Eigen::Index(cols)) throw ParseError("lambda has the wrong length");
  return cone_problem(m, lambda, budget);
}

Json cone_solution_to_json(const ConeProblem& p, const ConeSolution& s) {
  Json out = {{"lambda", int_vector_to_json(p.lambda)},
              {"lambda_prime", int_vector_to_json(s.lambda_prime)},
              {"distance", rational_to_json(s.distance)},
              {"image_norm", rational_to_json(s.image_norm)},
              {"achieved_ratio", s.achieved_ratio ? rational_to_json(*s.achieved_ratio) : Json(nullptr)},
              {"certificates",
               {{"in_kernel", s.in_kernel}, {"in_cone", s.in_cone}, {"norm_nonincreasing", s.norm_nonincreasing},
                {"recheck", check_solution(p, s)}}},
              {"diagnostics",
               {{"theta", rational_to_json(s.theta)},
                {"kernel_basis_norm", rational_to_json(s.kernel_basis_norm)},
                {"relaxed_distance", rational_to_json(s.relaxed_distance)},
                {"rounded_incumbent", s.rounded_incumbent},
                {"certified_optimal", s.certified_optimal},
                {"fallback", s.fallback},
                {"nodes", s.nodes}}}};
  if (s.basis) out["basis"] = basis_to_json(*s.basis);
  return out;
}

Json report_to_json(const CorrectionReport& r) {
  Json vertex = Json::array();
  for (const VertexStage& st : r.realization.vertex_stages) {
    vertex.push_back({{"vertex", st.vertex},
                      {"tree_edge", st.tree_edge ? Json(*st.tree_edge) : Json(nullptr)},
                      {"distance", rational_to_json(st.fix.distance)},
                      {"delta", rational_to_json(st.fix.delta)},
                      {"bound", rational_to_json(st.fix.bound)},
                      {"bound_holds", st.fix.bound_holds},
                      {"kept_points", st.fix.kept_points}});
  }
  Json letters = Json::array();
  for (std::size_t k = 0; k < r.realization.letter_distances.size(); ++k) {
    letters.push_back({{"edge", r.output.gog->graph.orientation[k]},
                       {"distance", rational_to_json(r.realization.letter_distances[k])},
                       {"kept_points", r.realization.letter_kept_points[k]}});
  }
  return {{"input_defect", rational_to_json(r.input_defect)},
          {"output_defect", rational_to_json(r.output_defect)},
          {"distance", rational_to_json(r.distance)},
          {"stability_ratio", r.stability_ratio ? rational_to_json(*r.stability_ratio) : Json(nullptr)},
          {"lambda", orbit_vector_to_json(r.lambda)},
          {"kernel_defect", rational_to_json(r.kernel_defect)},
          {"kernel_defect_bound", rational_to_json(r.kernel_defect_bound)},
          {"kernel_bound_holds", r.kernel_bound_holds},
          {"cone",
           {{"distance", rational_to_json(r.cone.distance)},
            {"image_norm", rational_to_json(r.cone.image_norm)},
            {"achieved_ratio", r.cone.achieved_ratio ? rational_to_json(*r.cone.achieved_ratio) : Json(nullptr)},
            {"theta", rational_to_json(r.cone.theta)},
            {"kernel_basis_norm", rational_to_json(r.cone.kernel_basis_norm)},
            {"certified_optimal", r.cone.certified_optimal},
            {"fallback", r.cone.fallback},
            {"nodes", r.cone.nodes}}},
          {"lambda_double_prime", orbit_vector_to_json(r.lambda_double_prime)},
          {"lambda_prime", orbit_vector_to_json(r.lambda_prime)},
          {"padding", r.padding},
          {"precondition_holds", r.precondition_holds},
          {"vertex_distance", rational_to_json(r.vertex_distance)},
          {"letter_distance", rational_to_json(r.letter_distance)},
          {"vertex_bounds_hold", r.vertex_bounds_hold},
          {"vertex_stages", vertex},
          {"letter_stages", letters}};
}

SchreierGraph schreier_from_json(const Json& j) {
  SchreierGraph a;
  a.vertices = field<std::size_t>(j, "vertices");
  const auto rank = field<std::size_t>(j, "rank");
  const Json labels = field<Json>(j, "labels");
  for (std::size_t l = 1; l <= rank; ++l) {
    const std::string key = "s" + std::to_string(l);
    if (!labels.contains(key)) throw ParseError("missing label '" + key + "'");
    a.labels.push_back(perm_from_json(labels.at(key), a.vertices));
  }
  if (labels.size() != rank) throw ParseError("label count does not match the rank");
  return a;
}

Json schreier_to_json(const SchreierGraph& a) {
  Json labels = Json::object();
  for (std::size_t l = 0; l < a.rank(); ++l) labels["s" + std::to_string(l + 1)] = perm_to_json(a.labels[l]);
  return {{"vertices", a.vertices}, {"rank", a.rank()}, {"labels", labels}};
}

AlmostAutomorphism automorphism_from_json(const Json& j, const SchreierGraph& a) {
  AlmostAutomorphism alpha;
  alpha.vertex_map = perm_from_json(field<Json>(j, "vertex_map"), a.vertices);
  alpha.n = field<std::size_t>(j, "n");
  if (alpha.n == 0) throw ParseError("n must be positive");
  alpha.edge_map = j.contains("edge_map") ? perm_from_json(j.at("edge_map"), a.edge_count())
                                          : induced_edge_map(a, alpha.vertex_map);
  return alpha;
}

Json automorphism_to_json(const AlmostAutomorphism& alpha) {
  return {{"vertex_map", perm_to_json(alpha.vertex_map)}, {"edge_map", perm_to_json(alpha.edge_map)}, {"n", alpha.n}};
}

Json repair_report_to_json(const RepairReport& r) {
  return {{"edge_diff", r.edge_diff},
          {"vertex_diff", r.vertex_diff},
          {"order", r.order},
          {"normalize_edits", r.normalize_edits},
          {"conversion_edits", r.conversion_edits},
          {"input_defect_edges", r.input_defect_edges},
          {"input_order_defects", r.input_order_defects},
          {"correction", report_to_json(r.correction)}};
}

std::vector<TrialConfig> trial_configs_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<TrialConfig> out;
    for (const Json& x : j) {
      auto more = trial_configs_from_json(x);
      out.insert(out.end(), more.begin(), more.end());
    }
    return out;
  }
  TrialConfig c;
  c.gog = field<std::string>(j, "gog");
  if (j.contains("degree")) c.degree = field<std::size_t>(j, "degree");
  if (j.contains("seed")) c.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("trials")) c.trials = field<std::size_t>(j, "trials");
  if (j.contains("budget")) c.budget = field<std::uint64_t>(j, "budget");
  if (j.contains("model")) {
    const Json& m = j.at("model");
    const std::string kind = m.contains("kind") ? field<std::string>(m, "kind") : "transpositions";
    if (kind == "transpositions") {
      c.model.kind = PerturbModel::Kind::Transpositions;
    } else if (kind == "rate") {
      c.model.kind = PerturbModel::Kind::Rate;
    } else if (kind == "vertex") {
      c.model.kind = PerturbModel::Kind::Vertex;
    } else if (kind == "mixed") {
      c.model.kind = PerturbModel::Kind::Mixed;
    } else if (kind == "retype") {
      c.model.kind = PerturbModel::Kind::Retype;
    } else {
      throw ParseError("unknown perturbation model '" + kind + "'");
    }
    if (m.contains("count")) c.model.count = field<std::size_t>(m, "count");
    if (m.contains("rate")) c.model.rate = field<double>(m, "rate");
  }
  c.validate();
  return {c};
}

}  // namespace pstab

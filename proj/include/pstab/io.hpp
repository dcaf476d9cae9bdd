#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "pstab/cone.hpp"
#include "pstab/correct.hpp"
#include "pstab/gog.hpp"
#include "pstab/harness.hpp"
#include "pstab/schreier.hpp"

namespace pstab {

using Json = nlohmann::json;

/// Reads and parses a JSON file. Throws ParseError.
Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& value);

// Groups: {"order", "table", "labels"}, or {"cyclic": n}, {"symmetric": k},
// or a string naming a group file relative to `base`.
GroupPtr group_from_json(const Json& j, const std::filesystem::path& base = {});
Json group_to_json(const FiniteGroup& g);

// Graphs of groups: {"vertices": [{"id", "group"}], "edges": [{"id", "bar",
// "origin", "terminus", "edge_group", "inclusion_to_terminus"}], "tree",
// "orientation", "name"}, or {"zoo": name}.
GogPtr gog_from_json(const Json& j, const std::filesystem::path& base = {});
Json gog_to_json(const GraphOfGroups& gog);
/// A zoo name, or a path to a graph-of-groups file.
GogPtr load_gog(const std::string& name_or_path);

// Almost actions: {"degree", "vertices": [{"id", "generators": {element:
// perm}}], "letters": {oriented edge id: perm}}.
AlmostAction action_from_json(const Json& j, const GogPtr& gog);
Json action_to_json(const AlmostAction& rho);

Json rational_to_json(const Rational& q);
Json orbit_vector_to_json(const OrbitVector& v);
Json basis_to_json(const LatticeBasis& b);

// Cone problems: {"matrix": [[...]], "lambda": [...], "budget"} or
// {"gog": <gog>, "lambda": [...], "budget"} for the d_G matrix.
ConeProblem cone_problem_from_json(const Json& j, const std::filesystem::path& base = {});
Json cone_solution_to_json(const ConeProblem& problem, const ConeSolution& s);

Json report_to_json(const CorrectionReport& r);

// Schreier graphs: {"vertices", "rank", "labels": {"s1": perm, ...}};
// automorphisms: {"vertex_map", "n", optional "edge_map"}.
SchreierGraph schreier_from_json(const Json& j);
Json schreier_to_json(const SchreierGraph& a);
AlmostAutomorphism automorphism_from_json(const Json& j, const SchreierGraph& a);
Json automorphism_to_json(const AlmostAutomorphism& alpha);
Json repair_report_to_json(const RepairReport& r);

// Bench configs: one object or an array of {"gog", "degree", "model":
// {"kind", "count", "rate"}, "seed", "trials", "budget"}.
std::vector<TrialConfig> trial_configs_from_json(const Json& j);

}  // namespace pstab

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pstab/harness.hpp"
#include "pstab/io.hpp"

using namespace pstab;

namespace {

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    save_json(path, j);
  }
}

int run_stabilize(const std::string& gog_arg, const std::string& action_path, const std::string& output,
                  const std::string& report_path, std::uint64_t budget, std::uint64_t seed, std::size_t degree,
                  std::size_t transpositions) {
  const GogPtr gog = load_gog(gog_arg);
  AlmostAction input = [&] {
    if (!action_path.empty()) return action_from_json(load_json(action_path), gog);
    // Synthetic input: a random honest action with letter transpositions.
    const AlmostAction honest = random_honest_action(gog, degree, Rng::derive(seed, 0));
    return perturb(honest, {PerturbModel::Kind::Transpositions, transpositions}, Rng::derive(seed, 1)).action;
  }();
  const CorrectionReport r = stabilize(input, StabilizeOptions{budget});
  emit(action_to_json(r.output), output);
  const Json report = report_to_json(r);
  if (!report_path.empty()) {
    save_json(report_path, report);
  } else if (!output.empty() && output != "-") {
    std::cout << report.dump(2) << '\n';
  }
  std::cerr << "defect " << to_string(r.input_defect) << " -> " << to_string(r.output_defect) << ", distance "
            << to_string(r.distance) << '\n';
  return r.output_defect == 0 ? 0 : 1;
}

int run_cone(const std::string& input, const std::string& output) {
  const std::filesystem::path p(input);
  const ConeProblem problem = cone_problem_from_json(load_json(p), p.parent_path());
  const ConeSolution s = integer_kernel_point(problem);
  emit(cone_solution_to_json(problem, s), output);
  return check_solution(problem, s).empty() ? 0 : 1;
}

int run_repair(const std::string& graph_path, const std::string& alpha_path, const std::string& out_graph,
               const std::string& out_alpha, const std::string& report_path, std::uint64_t budget) {
  const SchreierGraph a = schreier_from_json(load_json(graph_path));
  const AlmostAutomorphism alpha = automorphism_from_json(load_json(alpha_path), a);
  const RepairReport r = repair(a, alpha, StabilizeOptions{budget});
  const Json result = {{"graph", schreier_to_json(r.graph)}, {"automorphism", automorphism_to_json(r.alpha)}};
  if (!out_graph.empty()) save_json(out_graph, result["graph"]);
  if (!out_alpha.empty()) save_json(out_alpha, result["automorphism"]);
  if (out_graph.empty() && out_alpha.empty()) std::cout << result.dump(2) << '\n';
  const Json report = repair_report_to_json(r);
  if (!report_path.empty()) save_json(report_path, report);
  std::cerr << "edge diff " << r.edge_diff << ", vertex diff " << r.vertex_diff << ", order " << r.order << '\n';
  return is_exact(r.graph, r.alpha) ? 0 : 1;
}

int run_bench(const std::string& config_path, const std::string& output) {
  const auto configs = trial_configs_from_json(load_json(config_path));
  std::ofstream file;
  if (!output.empty() && output != "-") {
    file.open(output);
    if (!file) throw ParseError("cannot write '" + output + "'");
  }
  std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  write_csv_header(out);
  bool exact = true;
  for (const TrialConfig& c : configs) {
    for (const TrialRecord& r : run_trials(c)) {
      write_csv(out, r);
      exact = exact && r.output_exact;
    }
  }
  return exact ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilization of almost actions of graphs of groups"};
  app.require_subcommand(1);

  std::string gog_arg, action_path, output, report_path;
  std::uint64_t budget = kDefaultConeBudget, seed = 1;
  std::size_t degree = 60, transpositions = 3;
  auto* stab = app.add_subcommand("stabilize", "Correct an almost action to an exact one");
  stab->add_option("--gog", gog_arg, "Graph-of-groups file or zoo name")->required();
  stab->add_option("--action", action_path, "Almost action file (omit for a seeded random input)");
  stab->add_option("--output,-o", output, "Corrected action file (default stdout)");
  stab->add_option("--report", report_path, "Correction report file");
  stab->add_option("--budget", budget, "Cone search node budget");
  stab->add_option("--seed", seed, "Seed for synthetic input");
  stab->add_option("--degree", degree, "Degree of synthetic input");
  stab->add_option("--transpositions", transpositions, "Letter transpositions in synthetic input");

  std::string cone_input;
  auto* cone = app.add_subcommand("cone", "Nearest integer point of the cone-kernel");
  cone->add_option("--input,-i", cone_input, "Matrix and vector file")->required();
  cone->add_option("--output,-o", output, "Solution file (default stdout)");

  std::string graph_path, alpha_path, out_graph, out_alpha;
  auto* rep = app.add_subcommand("repair", "Repair an almost-periodic almost-automorphism");
  rep->add_option("--graph", graph_path, "Schreier graph file")->required();
  rep->add_option("--automorphism", alpha_path, "Automorphism file")->required();
  rep->add_option("--out-graph", out_graph, "Repaired graph file");
  rep->add_option("--out-automorphism", out_alpha, "Repaired automorphism file");
  rep->add_option("--report", report_path, "Diff report file");
  rep->add_option("--budget", budget, "Cone search node budget");

  std::string config_path;
  auto* bench = app.add_subcommand("bench", "Run perturbation trials and write CSV");
  bench->add_option("--config,-c", config_path, "Trial config file")->required();
  bench->add_option("--output,-o", output, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*stab) {
      return run_stabilize(gog_arg, action_path, output, report_path, budget, seed, degree, transpositions);
    }
    if (*cone) return run_cone(cone_input, output);
    if (*rep) return run_repair(graph_path, alpha_path, out_graph, out_alpha, report_path, budget);
    if (*bench) return run_bench(config_path, output);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 0;
}

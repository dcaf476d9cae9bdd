#include "pstab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>

#include "pstab/zoo.hpp"

namespace pstab {
namespace {

Perm random_perm(std::size_t n, Rng& rng) {
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), Point{0});
  rng.shuffle(p);
  return Perm(std::move(p));
}

Perm random_transposition(std::size_t n, Rng& rng) {
  const Point x = Point(rng.below(n));
  Point y = Point(rng.below(n - 1));
  if (y >= x) ++y;
  return transposition(n, x, y);
}

bool rate_hit(double rate, Rng& rng) {
  constexpr std::uint64_t kScale = std::uint64_t{1} << 40;
  return double(rng.below(kScale)) < rate * double(kScale);
}

// All count vectors c >= 0 with sum c_i degree_i = total.
void compositions(const std::vector<TransClass>& classes, std::size_t i, std::int64_t left, IntVector& cur,
                  std::vector<IntVector>& out) {
  if (i == classes.size()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  const std::int64_t deg = std::int64_t(classes[i].degree);
  for (std::int64_t c = 0; c * deg <= left; ++c) {
    cur[Eigen::Index(i)] = c;
    compositions(classes, i + 1, left - c * deg, cur, out);
  }
  cur[Eigen::Index(i)] = 0;
}

std::vector<Perm> all_perms(std::size_t n) {
  std::vector<Perm> out;
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), Point{0});
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<FiniteAction> all_group_actions(const GroupPtr& g, std::size_t n, const std::vector<Perm>& perms) {
  const std::vector<Element>& gens = g->generators();
  std::vector<FiniteAction> out;
  if (gens.empty()) {
    out.push_back(FiniteAction::trivial(g, n));
    return out;
  }
  // Candidate images per generator: permutations whose order divides the element order.
  std::vector<std::vector<const Perm*>> cand(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::size_t ord = g->element_order(gens[k]);
    for (const Perm& p : perms) {
      Perm q = Perm::identity(n);
      for (std::size_t j = 0; j < ord; ++j) q = p * q;
      if (q.is_identity()) cand[k].push_back(&p);
    }
  }
  std::vector<std::pair<Element, Perm>> assign(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      try {
        out.push_back(FiniteAction::from_generators(g, n, assign));
      } catch (const NotAnAction&) {
      }
      return;
    }
    for (const Perm* p : cand[k]) {
      assign[k] = {gens[k], *p};
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<OrbitVector> kernel_cone_generators(const GraphOfGroups& gog, std::int64_t max_norm,
                                                std::size_t limit) {
  const BasisPtr basis = LatticeBasis::vertices(gog);
  const DGMatrix d = dg_matrix(gog);
  std::vector<OrbitVector> gens;
  for (std::int64_t k = 1; k <= max_norm; ++k) {
    std::vector<std::vector<IntVector>> per_vertex(gog.vertex_count());
    std::size_t product = 1;
    for (VertexId v = 0; v < gog.vertex_count(); ++v) {
      const auto& classes = gog.vertex_groups[v]->classes();
      IntVector cur = IntVector::Zero(Eigen::Index(classes.size()));
      compositions(classes, 0, k, cur, per_vertex[v]);
      product *= per_vertex[v].size();
      if (product > limit) throw TooLarge("too many candidate kernel vectors");
    }
    IntVector x = IntVector::Zero(Eigen::Index(basis->size()));
    std::function<void(VertexId)> rec = [&](VertexId v) {
      if (v == gog.vertex_count()) {
        if (!(d.matrix * x).isZero()) return;
        for (const OrbitVector& g : gens) {
          if ((g.coords.array() <= x.array()).all()) return;
        }
        gens.push_back({basis, x});
        return;
      }
      const Eigen::Index off = Eigen::Index(basis->blocks()[v].offset);
      for (const IntVector& c : per_vertex[v]) {
        x.segment(off, c.size()) = c;
        rec(v + 1);
      }
    };
    rec(0);
  }
  return gens;
}

AlmostAction random_honest_action(const GogPtr& gog, std::size_t degree, std::uint64_t seed) {
  if (degree == 0) throw DegreeMismatch("degree must be positive");
  Rng rng(seed);
  std::int64_t max_group = 1;
  for (const GroupPtr& g : gog->vertex_groups) max_group = std::max(max_group, std::int64_t(g->order()));
  const std::vector<OrbitVector> gens = kernel_cone_generators(*gog, max_group);
  OrbitVector lambda{gens.front().basis, IntVector::Zero(Eigen::Index(gens.front().basis->size()))};
  std::int64_t left = std::int64_t(degree);
  while (left > 0) {
    std::vector<const OrbitVector*> fit;
    for (const OrbitVector& g : gens) {
      if (block_norm(g, 0) <= left) fit.push_back(&g);
    }
    const OrbitVector& pick = *fit[rng.below(fit.size())];
    lambda = lambda + pick;
    left -= block_norm(pick, 0);
  }
  AlmostAction a = realize_action(trivial_almost_action(gog, degree), lambda, Checks::Lenient).action;
  const Perm pi = random_perm(degree, rng);
  for (auto& v : a.vertex_actions) v = relabel(v, pi);
  const GraphOfGroups& g = *gog;
  for (std::size_t k = 0; k < g.oriented_edge_count(); ++k) {
    const EdgeId e = g.graph.orientation[k];
    if (g.in_tree[e]) continue;
    const EdgeId eb = g.graph.bar[e];
    const FiniteAction to = a.vertex_actions[g.graph.terminus[e]].pullback(g.inclusions[e]);
    const FiniteAction from = a.vertex_actions[g.graph.terminus[eb]].pullback(g.inclusions[eb]);
    a.stable_letters[k] = Perm(equivariant_matching(from, full_set(degree), to, full_set(degree), &rng));
  }
  if (defect(a) != 0) throw InternalInvariantBroken("sampled action is not honest");
  return a;
}

std::string PerturbModel::describe() const {
  switch (kind) {
    case Kind::Transpositions: return "transpositions:" + std::to_string(count);
    case Kind::Vertex: return "vertex:" + std::to_string(count);
    case Kind::Mixed: return "mixed:" + std::to_string(count);
    case Kind::Rate: return "rate:" + std::to_string(rate);
    case Kind::Retype: return "retype:" + std::to_string(count);
  }
  return "";
}

Perturbed perturb(const AlmostAction& rho, const PerturbModel& model, std::uint64_t seed) {
  rho.validate();
  Rng rng(seed);
  Perturbed out{rho, 0};
  const std::size_t n = rho.degree;
  if (n < 2) return out;
  auto on_letter = [&] {
    if (out.action.stable_letters.empty()) return false;
    Perm& s = out.action.stable_letters[rng.below(out.action.stable_letters.size())];
    s = random_transposition(n, rng) * s;
    return true;
  };
  auto on_vertex = [&] {
    const VertexId v = VertexId(rng.below(out.action.vertex_actions.size()));
    out.action.vertex_actions[v] = relabel(out.action.vertex_actions[v], random_transposition(n, rng));
    return true;
  };
  // An orbit of size > 1 becomes fixed points; a fixed point joins other
  // fixed points in a new transitive orbit of random type.
  auto retype = [&] {
    const VertexId v = VertexId(rng.below(out.action.vertex_actions.size()));
    const FiniteAction& rho_v = out.action.vertex_actions[v];
    const GroupPtr& g = rho_v.group();
    std::vector<Perm> images = rho_v.images();
    const auto orbits = orbit_decompose(rho_v);
    const Orbit& o = orbits[rng.below(orbits.size())];
    if (o.points.size() > 1) {
      for (Element x = 0; x < g->order(); ++x) {
        std::vector<Point> img = images[x].images();
        for (Point p : o.points) img[p] = p;
        images[x] = Perm(std::move(img));
      }
      out.action.vertex_actions[v] = FiniteAction(g, std::move(images));
      return o.points.size();
    }
    std::vector<Point> fixed;
    for (const Orbit& f : orbits) {
      if (f.points.size() == 1 && f.points[0] != o.points[0]) fixed.push_back(f.points[0]);
    }
    rng.shuffle(fixed);
    std::vector<std::size_t> fits;
    for (const TransClass& c : g->classes()) {
      if (c.degree > 1 && c.degree <= fixed.size() + 1) fits.push_back(c.index);
    }
    if (fits.empty()) return std::size_t{0};
    const std::size_t c = fits[rng.below(fits.size())];
    const CosetModel& model = g->coset_model(c);
    std::vector<Point> pts{o.points[0]};
    pts.insert(pts.end(), fixed.begin(), fixed.begin() + std::ptrdiff_t(g->classes()[c].degree - 1));
    for (Element x = 0; x < g->order(); ++x) {
      std::vector<Point> img = images[x].images();
      for (std::size_t k = 0; k < pts.size(); ++k) img[pts[k]] = pts[model.action[x][Point(k)]];
      images[x] = Perm(std::move(img));
    }
    out.action.vertex_actions[v] = FiniteAction(g, std::move(images));
    return pts.size();
  };
  switch (model.kind) {
    case PerturbModel::Kind::Retype:
      for (std::size_t k = 0; k < model.count; ++k) out.edits += retype();
      break;
    case PerturbModel::Kind::Transpositions:
      for (std::size_t k = 0; k < model.count; ++k) out.edits += on_letter();
      break;
    case PerturbModel::Kind::Vertex:
      for (std::size_t k = 0; k < model.count; ++k) out.edits += on_vertex();
      break;
    case PerturbModel::Kind::Mixed:
      for (std::size_t k = 0; k < model.count; ++k) out.edits += k % 2 == 0 ? on_letter() : on_vertex();
      break;
    case PerturbModel::Kind::Rate:
      for (Perm& s : out.action.stable_letters) {
        for (Point x = 0; x < n; ++x) {
          if (!rate_hit(model.rate, rng)) continue;
          Point y = Point(rng.below(n - 1));
          if (y >= x) ++y;
          s = s * transposition(n, x, y);
          ++out.edits;
        }
      }
      break;
  }
  return out;
}

void for_each_honest_action(const GogPtr& gog, std::size_t degree,
                            const std::function<void(const AlmostAction&)>& visit) {
  if (degree > 6) throw TooLarge("brute force needs degree <= 6");
  for (const GroupPtr& g : gog->vertex_groups) {
    if (g->order() > 6) throw TooLarge("brute force needs vertex groups of order <= 6");
  }
  const GraphOfGroups& g = *gog;
  const std::vector<Perm> perms = all_perms(degree);
  std::vector<std::vector<FiniteAction>> actions;
  for (const GroupPtr& vg : g.vertex_groups) actions.push_back(all_group_actions(vg, degree, perms));

  AlmostAction a = trivial_almost_action(gog, degree);
  std::function<void(std::size_t)> letters = [&](std::size_t k) {
    if (k == g.oriented_edge_count()) {
      visit(a);
      return;
    }
    const EdgeId e = g.graph.orientation[k];
    const EdgeId eb = g.graph.bar[e];
    const FiniteAction lhs = a.vertex_actions[g.graph.terminus[e]].pullback(g.inclusions[e]);
    const FiniteAction rhs = a.vertex_actions[g.graph.terminus[eb]].pullback(g.inclusions[eb]);
    for (const Perm& s : perms) {
      if (g.in_tree[e] && !s.is_identity()) continue;
      bool ok = true;
      for (Element h = 0; ok && h < g.edge_groups[e]->order(); ++h) {
        for (Point x = 0; ok && x < degree; ++x) ok = lhs(h)[s[x]] == s[rhs(h)[x]];
      }
      if (!ok) continue;
      a.stable_letters[k] = s;
      letters(k + 1);
    }
  };
  std::function<void(VertexId)> vertices = [&](VertexId v) {
    if (v == g.vertex_count()) {
      letters(0);
      return;
    }
    for (const FiniteAction& act : actions[v]) {
      a.vertex_actions[v] = act;
      vertices(v + 1);
    }
  };
  vertices(0);
}

std::vector<AlmostAction> brute_force_actions(const GogPtr& gog, std::size_t degree) {
  std::vector<AlmostAction> out;
  for_each_honest_action(gog, degree, [&](const AlmostAction& a) { out.push_back(a); });
  return out;
}

SchreierPair random_honest_schreier(std::size_t rank, std::size_t n, std::size_t vertices, std::uint64_t seed) {
  GogPtr gog = free_times_cyclic_gog(rank, n);
  AlmostAction a = random_honest_action(gog, vertices, seed);
  auto [graph, alpha] = from_almost_action(a);
  return {std::move(graph), std::move(alpha)};
}

SchreierPair perturb_schreier(const SchreierPair& honest, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  SchreierPair out = honest;
  const std::size_t m = honest.graph.vertices;
  if (m < 2) return out;
  for (std::size_t j = 0; j < k; ++j) {
    const Perm t = random_transposition(m, rng);
    if (honest.graph.rank() > 0 && rng.chance(1, 2)) {
      Perm& s = out.graph.labels[rng.below(honest.graph.rank())];
      s = s * t;
    } else {
      out.alpha.vertex_map = out.alpha.vertex_map * t;
    }
  }
  // The edge map stays the original one, so the result is only weak.
  return out;
}

void TrialConfig::validate() const {
  if (degree < 1) throw Incompatible("degree must be at least 1");
  if (model.rate < 0 || model.rate > 1) throw Incompatible("rate must lie in [0, 1]");
  gog_by_name(gog);
}

TrialRecord run_trial(const GogPtr& gog, std::size_t degree, const PerturbModel& model, std::uint64_t seed,
                      std::uint64_t budget) {
  const AlmostAction honest = random_honest_action(gog, degree, Rng::derive(seed, 0));
  const Perturbed p = perturb(honest, model, Rng::derive(seed, 1));
  const auto start = std::chrono::steady_clock::now();
  const CorrectionReport r = stabilize(p.action, StabilizeOptions{budget});
  const auto stop = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.gog = gog->name;
  rec.degree = degree;
  rec.model = model.describe();
  rec.seed = seed;
  rec.delta = r.input_defect;
  rec.kernel_defect = r.kernel_defect;
  rec.cone_ratio = r.cone.achieved_ratio;
  rec.distance = r.distance;
  rec.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  rec.fallback = r.cone.fallback;
  rec.output_exact = r.output_defect == 0;
  rec.kernel_bound_holds = r.kernel_bound_holds;
  rec.vertex_bounds_hold = r.vertex_bounds_hold;
  rec.precondition_holds = r.precondition_holds;
  return rec;
}

std::vector<TrialRecord> run_trials(const TrialConfig& config) {
  config.validate();
  const GogPtr gog = gog_by_name(config.gog);
  std::vector<TrialRecord> out;
  for (std::size_t t = 0; t < config.trials; ++t) {
    out.push_back(run_trial(gog, config.degree, config.model, Rng::derive(config.seed, t), config.budget));
  }
  return out;
}

void write_csv_header(std::ostream& out) {
  out << "gog,degree,model,seed,delta,kernel_defect,cone_ratio,distance,runtime_ms,fallback\n";
}

void write_csv(std::ostream& out, const TrialRecord& r) {
  out << r.gog << ',' << r.degree << ',' << r.model << ',' << r.seed << ',' << to_string(r.delta) << ','
      << to_string(r.kernel_defect) << ',' << (r.cone_ratio ? to_string(*r.cone_ratio) : "") << ','
      << to_string(r.distance) << ',' << r.runtime_ms << ',' << (r.fallback ? 1 : 0) << '\n';
}

}  // namespace pstab

#include "pstab/correct.hpp"

#include <deque>

namespace pstab {
namespace {

std::int64_t weighted_norm(const IntVector& v, const GroupPtr& g) {
  std::int64_t total = 0;
  for (Eigen::Index c = 0; c < v.size(); ++c) {
    total += std::abs(v[c]) * std::int64_t(g->classes()[std::size_t(c)].degree);
  }
  return total;
}

// Pick, per class in lowest-point order, `want` orbits of rho inside `within`.
PointSet choose_orbits(const FiniteAction& rho, const PointSet& within, IntVector want) {
  PointSet chosen(rho.degree(), false);
  for (const Orbit& o : orbit_decompose(rho, within)) {
    auto& left = want[Eigen::Index(o.class_index)];
    if (left <= 0) continue;
    --left;
    for (Point x : o.points) chosen[x] = true;
  }
  if ((want.array() != 0).any()) throw InternalInvariantBroken("not enough orbits to choose from");
  return chosen;
}

}  // namespace

Rational admissible_delta(const FiniteAction& phi, const GroupHom& i, const FiniteAction& rho,
                          const IntVector& lambda_prime) {
  if (rho.degree() == 0) return Rational(0);
  const Rational a = action_distance(rho.pullback(i), phi);
  const IntVector lambda = orbit_counts(rho);
  const Rational c = Rational(weighted_norm(lambda - lambda_prime, rho.group()),
                              weighted_norm(lambda, rho.group()));
  return a > c ? a : c;
}

VertexFix fix_vertex_action(const FiniteAction& phi, const GroupHom& i, const FiniteAction& rho,
                            const IntVector& lambda_prime, const Rational& delta) {
  const GroupPtr& g = rho.group();
  const GroupPtr& h = i.source();
  const std::size_t n = rho.degree();
  if (phi.degree() != n) throw DegreeMismatch("phi and rho act on sets of different sizes");
  if (lambda_prime.size() != Eigen::Index(g->classes().size()) || (lambda_prime.array() < 0).any()) {
    throw PreconditionFailed("lambda' is not in the positive cone of the class basis");
  }
  if (pullback(i) * lambda_prime != orbit_counts(phi)) throw PreconditionFailed("i*(lambda') != phi#");
  const IntVector lambda = orbit_counts(rho);
  const Rational dist_a = action_distance(rho.pullback(i), phi);
  if (dist_a > delta) {
    throw PreconditionFailed("d_{X,H}(rho o i, phi) = " + to_string(dist_a) + " > delta = " + to_string(delta));
  }
  const Rational lhs_c(weighted_norm(lambda - lambda_prime, g));
  const Rational rhs_c = delta * Rational(weighted_norm(lambda, g));
  if (lhs_c > rhs_c) {
    throw PreconditionFailed("||lambda - lambda'||_G = " + to_string(lhs_c) + " > delta ||lambda||_G = " +
                             to_string(rhs_c));
  }

  // X_0: agreement set of phi and rho o i, shrunk to phi(H)-invariance.
  PointSet agree(n, true);
  for (Element x = 0; x < h->order(); ++x) {
    const Perm& p = phi(x);
    const Perm& q = rho(i(x));
    for (Point y = 0; y < n; ++y) {
      if (p[y] != q[y]) agree[y] = false;
    }
  }
  const PointSet x0 = invariant_shrink(phi, agree);
  const PointSet x1 = invariant_shrink(rho, x0);

  const IntVector lambda1 = orbit_counts(rho, x1);
  const IntVector mu1 = lambda_prime.cwiseMin(lambda1);
  const IntVector mu2 = lambda_prime - mu1;
  const PointSet y1 = choose_orbits(rho, x1, mu1);
  PointSet y2(n);
  for (Point y = 0; y < n; ++y) y2[y] = !y1[y];

  // Rebuild on Y_2 from phi restricted there.
  auto [phi2, points] = restrict_action(phi, y2);
  std::vector<Point> index(n, Point(-1));
  for (std::size_t k = 0; k < points.size(); ++k) index[points[k]] = Point(k);
  FiniteAction rho2 = [&] {
    try {
      return extend_action(phi2, i, mu2);
    } catch (const Incompatible& e) {
      throw InternalInvariantBroken(std::string("rebuilding the complement failed: ") + e.what());
    }
  }();
  std::vector<Perm> images;
  images.reserve(g->order());
  for (Element x = 0; x < g->order(); ++x) {
    std::vector<Point> img(n);
    for (Point y = 0; y < n; ++y) img[y] = y1[y] ? rho(x)[y] : points[rho2(x)[index[y]]];
    images.emplace_back(std::move(img));
  }

  VertexFix fix{FiniteAction(g, std::move(images)), 0, delta, 0, false, count(y1)};
  if (!(fix.action.pullback(i) == phi)) throw InternalInvariantBroken("rho' o i != phi");
  if (orbit_counts(fix.action) != lambda_prime) throw InternalInvariantBroken("rho'# != lambda'");
  fix.distance = action_distance(rho, fix.action);
  fix.bound = Rational(2 * std::int64_t(h->order()) * std::int64_t(g->order() * g->order())) * delta;
  fix.bound_holds = fix.distance <= fix.bound;
  return fix;
}

Realization realize_action(const AlmostAction& rho, const OrbitVector& lambda_prime, Checks checks) {
  rho.validate();
  const GraphOfGroups& gog = *rho.gog;
  const std::size_t n = rho.degree;
  const DGMatrix d = dg_matrix(gog);
  if (!(*lambda_prime.basis == *d.cols)) throw PreconditionFailed("lambda' is not over the vertex basis");
  if (!lambda_prime.in_cone()) throw PreconditionFailed("lambda' is not in the positive cone");
  if (!apply(d, lambda_prime).coords.isZero()) throw PreconditionFailed("lambda' is not in ker d");
  for (VertexId v = 0; v < gog.vertex_count(); ++v) {
    if (block_norm(lambda_prime, v) != std::int64_t(n)) {
      throw PreconditionFailed("lambda' does not have norm |X| at vertex " + std::to_string(v));
    }
  }

  Realization out;
  const OrbitVector lambda = sharp(rho);
  const Rational delta = defect(rho);
  out.precondition_holds = norm(lambda - lambda_prime) <= delta * norm(lambda);
  if (!out.precondition_holds && checks == Checks::Strict) {
    throw PreconditionFailed("||lambda - lambda'||_V = " + to_string(norm(lambda - lambda_prime)) +
                             " exceeds delta ||lambda||_V = " + to_string(delta * norm(lambda)));
  }

  out.action = rho;
  // Step 1: vertex actions in BFS order over the spanning tree from vertex 0.
  std::vector<bool> done(gog.vertex_count(), false);
  std::deque<std::pair<VertexId, std::optional<EdgeId>>> queue{{0, std::nullopt}};
  done[0] = true;
  const GroupPtr one = trivial_group();
  while (!queue.empty()) {
    const auto [v, via] = queue.front();
    queue.pop_front();
    const GroupPtr& gv = gog.vertex_groups[v];
    const IntVector target = lambda_prime.block(v);
    const FiniteAction& old = rho.vertex_actions[v];
    VertexFix fix = [&] {
      if (!via) {
        const GroupHom i = GroupHom::trivial(one, gv);
        const FiniteAction phi = FiniteAction::trivial(one, n);
        return fix_vertex_action(phi, i, old, target, admissible_delta(phi, i, old, target));
      }
      const EdgeId e = *via;
      const GroupHom& i = gog.inclusions[e];
      const FiniteAction phi = out.action.vertex_actions[gog.graph.origin[e]].pullback(gog.inclusions[gog.graph.bar[e]]);
      return fix_vertex_action(phi, i, old, target, admissible_delta(phi, i, old, target));
    }();
    out.action.vertex_actions[v] = fix.action;
    out.vertex_stages.push_back({v, via, std::move(fix)});
    for (EdgeId e = 0; e < gog.edge_count(); ++e) {
      if (!gog.in_tree[e] || gog.graph.origin[e] != v || done[gog.graph.terminus[e]]) continue;
      done[gog.graph.terminus[e]] = true;
      queue.push_back({gog.graph.terminus[e], e});
    }
  }

  // Step 2: stable letters.
  for (std::size_t k = 0; k < gog.oriented_edge_count(); ++k) {
    const EdgeId e = gog.graph.orientation[k];
    const Perm& s = rho.stable_letters[k];
    if (gog.in_tree[e]) {
      out.action.stable_letters[k] = Perm::identity(n);
      out.letter_kept_points.push_back(n);
      out.letter_distances.push_back(normalized_hamming(s, out.action.stable_letters[k]));
      continue;
    }
    const EdgeId eb = gog.graph.bar[e];
    const FiniteAction a_old = rho.vertex_actions[gog.graph.terminus[e]].pullback(gog.inclusions[e]);
    const FiniteAction b_old = rho.vertex_actions[gog.graph.terminus[eb]].pullback(gog.inclusions[eb]);
    const FiniteAction a_new = out.action.vertex_actions[gog.graph.terminus[e]].pullback(gog.inclusions[e]);
    const FiniteAction b_new = out.action.vertex_actions[gog.graph.terminus[eb]].pullback(gog.inclusions[eb]);
    PointSet good(n, true);
    for (Element g = 0; g < gog.edge_groups[e]->order(); ++g) {
      for (Point x = 0; x < n; ++x) {
        if (!good[x]) continue;
        const Point sx = s[x];
        good[x] = a_old(g)[sx] == s[b_old(g)[x]] && b_old(g)[x] == b_new(g)[x] &&
                  a_old(g)[sx] == a_new(g)[sx];
      }
    }
    const PointSet xe = invariant_shrink(b_new, good);
    PointSet from(n), to(n, true);
    for (Point x = 0; x < n; ++x) {
      from[x] = !xe[x];
      if (xe[x]) to[s[x]] = false;
    }
    std::vector<Point> letter(n);
    std::vector<Point> f;
    try {
      f = equivariant_matching(b_new, from, a_new, to);
    } catch (const Incompatible& err) {
      throw InternalInvariantBroken(std::string("letter completion failed: ") + err.what());
    }
    for (Point x = 0; x < n; ++x) letter[x] = xe[x] ? s[x] : f[x];
    out.action.stable_letters[k] = Perm(std::move(letter));
    out.letter_kept_points.push_back(count(xe));
    out.letter_distances.push_back(normalized_hamming(s, out.action.stable_letters[k]));
  }

  if (defect(out.action) != 0) throw InternalInvariantBroken("rebuilt action has positive defect");
  if (!(sharp(out.action) == lambda_prime)) throw InternalInvariantBroken("rebuilt action has the wrong sharp");
  return out;
}

CorrectionReport stabilize(const AlmostAction& rho, const StabilizeOptions& options) {
  rho.validate();
  const GraphOfGroups& gog = *rho.gog;
  const std::int64_t n = std::int64_t(rho.degree);
  CorrectionReport r;
  r.input_defect = defect(rho);
  r.lambda = sharp(rho);

  const DGMatrix d = dg_matrix(gog);
  r.kernel_defect = norm(apply(d, r.lambda));
  r.kernel_defect_bound = Rational(kernel_defect_constant(gog)) * r.input_defect * Rational(n);
  r.kernel_bound_holds = r.kernel_defect <= r.kernel_defect_bound;

  const ConeProblem problem = cone_problem(d, r.lambda, options.budget);
  r.cone = integer_kernel_point(problem);
  r.lambda_double_prime = r.cone.as_orbit_vector();
  const OrbitVector singleton = singleton_sharp(gog);
  r.lambda_prime = pad_to_norm(r.lambda_double_prime, n, singleton);
  r.padding = n - numerator(norm(r.lambda_double_prime)).convert_to<std::int64_t>();

  r.realization = realize_action(rho, r.lambda_prime, Checks::Lenient);
  r.output = r.realization.action;
  r.output_defect = defect(r.output);
  r.distance = generator_distance(rho, r.output);
  if (r.input_defect > 0) r.stability_ratio = r.distance / r.input_defect;
  r.precondition_holds = r.realization.precondition_holds;
  r.vertex_distance = 0;
  r.vertex_bounds_hold = true;
  for (const VertexStage& st : r.realization.vertex_stages) {
    r.vertex_distance += st.fix.distance;
    r.vertex_bounds_hold = r.vertex_bounds_hold && st.fix.bound_holds;
  }
  r.letter_distance = 0;
  for (const Rational& x : r.realization.letter_distances) r.letter_distance += x;
  return r;
}

}  // namespace pstab

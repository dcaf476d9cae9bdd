#include "pstab/action.hpp"

#include <algorithm>
#include <map>

#include "pstab/rng.hpp"

namespace pstab {

namespace {

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a->order() == b->order() && a->same_table(*b));
}

bool in_set(const PointSet& s, Point x) { return s.empty() || s[x]; }

}  // namespace

FiniteAction::FiniteAction(GroupPtr group, std::vector<Perm> element_images)
    : group_(std::move(group)), images_(std::move(element_images)) {
  const std::size_t n = group_->order();
  if (images_.size() != n) throw NotAnAction("need one permutation per group element");
  degree_ = images_[0].degree();
  for (const Perm& p : images_) {
    if (p.degree() != degree_) throw NotAnAction("permutations of different degrees");
  }
  if (!images_[0].is_identity()) throw NotAnAction("identity does not act trivially");
  // Checking rho(a s) = rho(a) rho(s) for generators s suffices.
  for (std::size_t a = 0; a < n; ++a) {
    for (Element s : group_->generators()) {
      const Perm& lhs = images_[group_->mul(Element(a), s)];
      const Perm& p = images_[a];
      const Perm& q = images_[s];
      for (std::size_t x = 0; x < degree_; ++x) {
        if (lhs[Point(x)] != p[q[Point(x)]]) {
          throw NotAnAction("images violate the multiplication table at (" + std::to_string(a) +
                            ", " + std::to_string(s) + ")");
        }
      }
    }
  }
}

FiniteAction FiniteAction::from_generators(GroupPtr group, std::size_t degree,
                                           const std::vector<std::pair<Element, Perm>>& generators) {
  const std::size_t n = group->order();
  std::vector<Perm> images(n);
  std::vector<bool> known(n, false);
  images[0] = Perm::identity(degree);
  known[0] = true;
  for (const auto& [s, p] : generators) {
    if (s >= n) throw NotAnAction("generator id out of range");
    if (p.degree() != degree) throw NotAnAction("generator image has wrong degree");
  }
  std::vector<Element> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element h = queue[i];
    for (const auto& [s, p] : generators) {
      const Element x = group->mul(h, s);
      Perm img = images[h] * p;
      if (known[x]) {
        if (images[x] != img) throw NotAnAction("generator images do not define a homomorphism");
      } else {
        known[x] = true;
        images[x] = std::move(img);
        queue.push_back(x);
      }
    }
  }
  if (queue.size() != n) throw NotAnAction("generator images do not determine every element");
  return FiniteAction(std::move(group), std::move(images));
}

FiniteAction FiniteAction::trivial(GroupPtr group, std::size_t degree) {
  std::vector<Perm> images(group->order(), Perm::identity(degree));
  return FiniteAction(std::move(group), std::move(images));
}

FiniteAction FiniteAction::coset(GroupPtr group, std::size_t class_index) {
  std::vector<Perm> images = group->coset_model(class_index).action;
  return FiniteAction(std::move(group), std::move(images));
}

FiniteAction FiniteAction::model(GroupPtr group, const IntVector& counts) {
  const auto& classes = group->classes();
  if (static_cast<std::size_t>(counts.size()) != classes.size()) {
    throw Incompatible("orbit vector length differs from the class basis");
  }
  std::size_t degree = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (counts[Eigen::Index(c)] < 0) throw Incompatible("negative orbit count");
    degree += std::size_t(counts[Eigen::Index(c)]) * classes[c].degree;
  }
  std::vector<std::vector<Point>> images(group->order(), std::vector<Point>(degree));
  std::size_t offset = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const CosetModel& m = group->coset_model(c);
    for (std::int64_t copy = 0; copy < counts[Eigen::Index(c)]; ++copy) {
      for (std::size_t g = 0; g < group->order(); ++g) {
        for (std::size_t x = 0; x < classes[c].degree; ++x) {
          images[g][offset + x] = Point(offset + m.action[g][Point(x)]);
        }
      }
      offset += classes[c].degree;
    }
  }
  std::vector<Perm> perms;
  perms.reserve(images.size());
  for (auto& img : images) perms.emplace_back(std::move(img));
  return FiniteAction(std::move(group), std::move(perms));
}

FiniteAction FiniteAction::pullback(const GroupHom& i) const {
  if (!same_group(i.target(), group_)) throw Incompatible("homomorphism target is not the acting group");
  std::vector<Perm> images;
  images.reserve(i.source()->order());
  for (Element h = 0; h < i.source()->order(); ++h) images.push_back(images_[i(h)]);
  return FiniteAction(i.source(), std::move(images));
}

ElementMask stabilizer(const FiniteAction& rho, Point x) {
  ElementMask m{};
  for (Element g = 0; g < rho.group()->order(); ++g) {
    if (rho(g)[x] == x) mask_set(m, g);
  }
  return m;
}

std::vector<Orbit> orbit_decompose(const FiniteAction& rho, const PointSet& within) {
  std::vector<Orbit> orbits;
  std::vector<bool> seen(rho.degree(), false);
  for (Point x = 0; x < rho.degree(); ++x) {
    if (seen[x] || !in_set(within, x)) continue;
    Orbit orbit;
    for (Element g = 0; g < rho.group()->order(); ++g) {
      const Point y = rho(g)[x];
      if (!seen[y]) {
        seen[y] = true;
        orbit.points.push_back(y);
      }
    }
    std::sort(orbit.points.begin(), orbit.points.end());
    orbit.class_index = rho.group()->class_of_subgroup(stabilizer(rho, x));
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

IntVector orbit_counts(const FiniteAction& rho, const PointSet& within) {
  IntVector counts = IntVector::Zero(Eigen::Index(rho.group()->classes().size()));
  for (const Orbit& o : orbit_decompose(rho, within)) ++counts[Eigen::Index(o.class_index)];
  return counts;
}

PointSet invariant_shrink(const FiniteAction& rho, const PointSet& y) {
  PointSet out = y;
  for (Point x = 0; x < y.size(); ++x) {
    if (y[x]) continue;
    for (Element g = 0; g < rho.group()->order(); ++g) out[rho(g)[x]] = false;
  }
  return out;
}

PointSet invariant_shrink(std::span<const Perm> generators, const PointSet& y) {
  PointSet out = y;
  std::vector<bool> visited(y.size(), false);
  std::vector<Point> stack;
  for (Point x = 0; x < y.size(); ++x) {
    if (y[x] || visited[x]) continue;
    visited[x] = true;
    stack.push_back(x);
    while (!stack.empty()) {
      const Point p = stack.back();
      stack.pop_back();
      out[p] = false;
      for (const Perm& s : generators) {
        const Point q = s[p];
        if (!visited[q]) {
          visited[q] = true;
          stack.push_back(q);
        }
      }
    }
  }
  return out;
}

bool is_invariant(const FiniteAction& rho, const PointSet& y) {
  for (Point x = 0; x < y.size(); ++x) {
    if (!y[x]) continue;
    for (Element g = 0; g < rho.group()->order(); ++g) {
      if (!y[rho(g)[x]]) return false;
    }
  }
  return true;
}

Rational action_distance(const FiniteAction& a, const FiniteAction& b) {
  if (a.group()->order() != b.group()->order() || a.degree() != b.degree()) {
    throw DegreeMismatch("actions of different groups or degrees");
  }
  std::size_t total = 0;
  for (Element g = 0; g < a.group()->order(); ++g) total += hamming(a(g), b(g));
  if (a.degree() == 0) return Rational(0);
  return Rational(long(total), long(a.degree()));
}

std::vector<Point> equivariant_matching(const FiniteAction& from, const PointSet& from_set,
                                        const FiniteAction& to, const PointSet& to_set,
                                        Rng* rng) {
  if (!same_group(from.group(), to.group())) throw Incompatible("actions of different groups");
  const auto source = orbit_decompose(from, from_set);
  const auto target = orbit_decompose(to, to_set);
  const std::size_t classes = from.group()->classes().size();
  std::vector<std::vector<const Orbit*>> by_class_source(classes), by_class_target(classes);
  for (const Orbit& o : source) by_class_source[o.class_index].push_back(&o);
  for (const Orbit& o : target) by_class_target[o.class_index].push_back(&o);

  std::vector<Point> map(from.degree(), Point(-1));
  for (std::size_t c = 0; c < classes; ++c) {
    if (by_class_source[c].size() != by_class_target[c].size()) {
      throw Incompatible("restricted actions are not isomorphic");
    }
    if (rng != nullptr) rng->shuffle(by_class_target[c]);
    for (std::size_t k = 0; k < by_class_source[c].size(); ++k) {
      const Orbit& src = *by_class_source[c][k];
      const Orbit& dst = *by_class_target[c][k];
      const Point x0 = src.points.front();
      const ElementMask stab = stabilizer(from, x0);
      std::vector<Point> candidates;
      for (Point z : dst.points) {
        if (stabilizer(to, z) == stab) {
          candidates.push_back(z);
          if (rng == nullptr) break;
        }
      }
      if (candidates.empty()) throw InternalInvariantBroken("no base point with matching stabilizer");
      const Point z0 = rng ? candidates[rng->below(candidates.size())] : candidates.front();
      for (Element g = 0; g < from.group()->order(); ++g) map[from(g)[x0]] = to(g)[z0];
    }
  }
  return map;
}

FiniteAction extend_action(const FiniteAction& phi, const GroupHom& i, const IntVector& lambda) {
  if (!same_group(phi.group(), i.source())) throw Incompatible("phi is not an action of the source group");
  const GroupPtr& g = i.target();
  if (static_cast<std::size_t>(lambda.size()) != g->classes().size()) {
    throw Incompatible("orbit vector length differs from the class basis");
  }
  std::int64_t size = 0;
  for (Eigen::Index c = 0; c < lambda.size(); ++c) {
    if (lambda[c] < 0) throw Incompatible("orbit vector outside the positive cone");
    size += lambda[c] * std::int64_t(g->classes()[std::size_t(c)].degree);
  }
  if (size != std::int64_t(phi.degree())) throw Incompatible("norm of lambda differs from |X|");

  const FiniteAction model = FiniteAction::model(g, lambda);
  const FiniteAction restricted = model.pullback(i);
  if (orbit_counts(restricted) != orbit_counts(phi)) throw Incompatible("i*(lambda) != phi#");

  const std::vector<Point> f = equivariant_matching(phi, {}, restricted, {});
  std::vector<Point> f_inv(f.size());
  for (Point x = 0; x < f.size(); ++x) f_inv[f[x]] = x;
  std::vector<Perm> images;
  images.reserve(g->order());
  for (Element a = 0; a < g->order(); ++a) {
    std::vector<Point> img(phi.degree());
    for (Point x = 0; x < phi.degree(); ++x) img[x] = f_inv[model(a)[f[x]]];
    images.emplace_back(std::move(img));
  }
  return FiniteAction(g, std::move(images));
}

std::pair<FiniteAction, std::vector<Point>> restrict_action(const FiniteAction& rho,
                                                            const PointSet& subset) {
  if (!is_invariant(rho, subset)) throw Incompatible("subset is not invariant");
  std::vector<Point> points;
  std::vector<Point> index(rho.degree(), Point(-1));
  for (Point x = 0; x < rho.degree(); ++x) {
    if (subset[x]) {
      index[x] = Point(points.size());
      points.push_back(x);
    }
  }
  std::vector<Perm> images;
  for (Element g = 0; g < rho.group()->order(); ++g) {
    std::vector<Point> img(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) img[k] = index[rho(g)[points[k]]];
    images.emplace_back(std::move(img));
  }
  return {FiniteAction(rho.group(), std::move(images)), std::move(points)};
}

FiniteAction relabel(const FiniteAction& rho, const Perm& pi) {
  std::vector<Perm> images;
  images.reserve(rho.images().size());
  for (const Perm& p : rho.images()) images.push_back(conjugate(p, pi));
  return FiniteAction(rho.group(), std::move(images));
}

PointSet full_set(std::size_t n) { return PointSet(n, true); }

std::size_t count(const PointSet& s) { return std::size_t(std::count(s.begin(), s.end(), true)); }

}  // namespace pstab

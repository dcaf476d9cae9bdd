#include "pstab/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace pstab {

namespace {

std::string decimal_label(Element e) { return std::to_string(e); }

}  // namespace

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<Element>>& table,
                                 std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) throw NotAGroup("empty table");
  for (const auto& row : table) {
    if (row.size() != n) throw NotAGroup("table is not square");
    for (Element x : row) {
      if (x >= n) throw NotAGroup("entry out of range");
    }
  }
  if (!labels.empty() && labels.size() != n) throw NotAGroup("label count differs from order");

  for (std::size_t a = 0; a < n; ++a) {
    std::vector<Element> column(n);
    for (std::size_t b = 0; b < n; ++b) column[b] = table[b][a];
    if (!is_permutation(table[a])) {
      throw NotAGroup("row " + std::to_string(a) + " is not a permutation");
    }
    if (!is_permutation(column)) {
      throw NotAGroup("column " + std::to_string(a) + " is not a permutation");
    }
  }

  std::size_t identity = n;
  for (std::size_t e = 0; e < n && identity == n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity == n) throw NotAGroup("no two-sided identity");

  // Swap ids 0 and identity.
  std::vector<Element> relabel(n);
  std::iota(relabel.begin(), relabel.end(), Element{0});
  std::swap(relabel[0], relabel[identity]);

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      g->table_[relabel[a] * n + relabel[b]] = relabel[table[a][b]];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Element ab = g->mul(Element(a), Element(b));
      for (std::size_t c = 0; c < n; ++c) {
        if (g->mul(ab, Element(c)) != g->mul(Element(a), g->mul(Element(b), Element(c)))) {
          throw NotAGroup("multiplication is not associative");
        }
      }
    }
  }
  g->inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g->mul(Element(a), Element(b)) == 0) g->inverse_[a] = Element(b);
    }
  }

  if (labels.empty()) {
    for (std::size_t a = 0; a < n; ++a) g->labels_.push_back(decimal_label(Element(a)));
  } else {
    g->labels_.resize(n);
    for (std::size_t a = 0; a < n; ++a) g->labels_[relabel[a]] = labels[a];
    std::set<std::string> unique(g->labels_.begin(), g->labels_.end());
    if (unique.size() != n) throw NotAGroup("labels are not unique");
  }

  g->generators_ = generating_set(*g);
  g->build_catalogue();
  return g;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::string FiniteGroup::label(Element a) const { return labels_.at(a); }

Element FiniteGroup::parse_element(const std::string& text) const {
  for (std::size_t a = 0; a < order_; ++a) {
    if (labels_[a] == text) return Element(a);
  }
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    throw ParseError("unknown group element '" + text + "'");
  }
  if (pos != text.size() || value >= order_) throw ParseError("unknown group element '" + text + "'");
  return Element(value);
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> rows(order_, std::vector<Element>(order_));
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) rows[a][b] = mul(Element(a), Element(b));
  }
  return rows;
}

const std::vector<TransClass>& FiniteGroup::classes() const {
  if (!has_catalogue()) {
    throw GroupTooLarge("order " + std::to_string(order_) + " exceeds " +
                        std::to_string(kMaxCatalogueOrder));
  }
  return classes_;
}

const CosetModel& FiniteGroup::coset_model(std::size_t index) const {
  classes();
  return models_.at(index);
}

std::size_t FiniteGroup::class_of_subgroup(const ElementMask& subgroup) const {
  classes();
  auto it = subgroup_to_class_.find(subgroup);
  if (it == subgroup_to_class_.end()) throw Error("element set is not a subgroup");
  return it->second;
}

void FiniteGroup::build_catalogue() {
  if (!has_catalogue()) return;
  const std::size_t n = order_;

  // Breadth-first closure: every subgroup is reached from the trivial one by
  // adjoining one element at a time.
  struct Found {
    std::vector<Element> generators;
    std::vector<Element> elements;
  };
  std::vector<Found> found;
  std::map<ElementMask, std::size_t> index_of;
  {
    const std::vector<Element> trivial{0};
    found.push_back({{}, trivial});
    index_of.emplace(mask_of(trivial), 0);
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    const ElementMask current = mask_of(found[i].elements);
    for (std::size_t g = 1; g < n; ++g) {
      if (mask_test(current, Element(g))) continue;
      std::vector<Element> gens = found[i].generators;
      gens.push_back(Element(g));
      std::vector<Element> elems = generated_subgroup(*this, gens);
      const ElementMask m = mask_of(elems);
      if (index_of.contains(m)) continue;
      index_of.emplace(m, found.size());
      found.push_back({std::move(gens), std::move(elems)});
    }
  }

  // Canonical representative: least sorted conjugate.
  std::map<std::vector<Element>, std::vector<ElementMask>> by_canonical;
  for (const auto& sub : found) {
    std::vector<Element> best;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<Element> conj;
      conj.reserve(sub.elements.size());
      for (Element h : sub.elements) conj.push_back(mul(mul(Element(a), h), inverse(Element(a))));
      std::sort(conj.begin(), conj.end());
      if (best.empty() || conj < best) best = std::move(conj);
    }
    by_canonical[best].push_back(mask_of(sub.elements));
  }

  for (const auto& [canonical, members] : by_canonical) {
    classes_.push_back({0, canonical, n / canonical.size()});
  }
  std::sort(classes_.begin(), classes_.end(), [](const TransClass& a, const TransClass& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.stabilizer < b.stabilizer;
  });
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    classes_[c].index = c;
    for (const ElementMask& m : by_canonical.at(classes_[c].stabilizer)) subgroup_to_class_[m] = c;
  }

  for (const TransClass& cls : classes_) {
    CosetModel model;
    std::vector<std::size_t> coset_of(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      if (coset_of[a] != n) continue;
      const std::size_t c = model.representatives.size();
      model.representatives.push_back(Element(a));
      for (Element k : cls.stabilizer) coset_of[mul(Element(a), k)] = c;
    }
    for (std::size_t g = 0; g < n; ++g) {
      std::vector<Point> images(model.representatives.size());
      for (std::size_t c = 0; c < images.size(); ++c) {
        images[c] = Point(coset_of[mul(Element(g), model.representatives[c])]);
      }
      model.action.emplace_back(std::move(images));
    }
    models_.push_back(std::move(model));
  }
}

ElementMask mask_of(std::span<const Element> elements) {
  ElementMask m{};
  for (Element e : elements) {
    if (e >= 256) throw GroupTooLarge("element id beyond mask capacity");
    mask_set(m, e);
  }
  return m;
}

std::vector<Element> elements_of(const ElementMask& mask) {
  std::vector<Element> out;
  for (Element e = 0; e < 256; ++e) {
    if (mask_test(mask, e)) out.push_back(e);
  }
  return out;
}

std::vector<Element> generated_subgroup(const FiniteGroup& g, std::span<const Element> generators) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> elems{0};
  in[0] = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Element s : generators) {
      const Element x = g.mul(elems[i], s);
      if (!in[x]) {
        in[x] = true;
        elems.push_back(x);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<Element> generating_set(const FiniteGroup& g) {
  std::vector<Element> gens;
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  for (std::size_t a = 1; a < g.order(); ++a) {
    if (in[a]) continue;
    gens.push_back(Element(a));
    for (Element x : generated_subgroup(g, gens)) in[x] = true;
  }
  return gens;
}

GroupPtr trivial_group() { return cyclic_group(1); }

GroupPtr cyclic_group(std::size_t n) {
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a][b] = Element((a + b) % n);
  }
  return FiniteGroup::from_table(table);
}

GroupPtr symmetric_group(std::size_t k) {
  std::vector<std::vector<Point>> perms;
  std::vector<Point> p(k);
  std::iota(p.begin(), p.end(), Point{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<Point>, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], Element(i));
  const std::size_t n = perms.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<Point> c(k);
      for (std::size_t x = 0; x < k; ++x) c[x] = perms[a][perms[b][x]];
      table[a][b] = index.at(c);
    }
    std::string label = "[";
    for (std::size_t x = 0; x < k; ++x) label += (x ? "," : "") + std::to_string(perms[a][x]);
    labels.push_back(label + "]");
  }
  return FiniteGroup::from_table(table, labels);
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  const std::size_t na = a->order();
  const std::size_t nb = b->order();
  std::vector<std::vector<Element>> table(na * nb, std::vector<Element>(na * nb));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < na * nb; ++x) {
    for (std::size_t y = 0; y < na * nb; ++y) {
      const Element first = a->mul(Element(x / nb), Element(y / nb));
      const Element second = b->mul(Element(x % nb), Element(y % nb));
      table[x][y] = Element(first * nb + second);
    }
    labels.push_back("(" + a->label(Element(x / nb)) + "," + b->label(Element(x % nb)) + ")");
  }
  return FiniteGroup::from_table(table, labels);
}

GroupPtr validate_group(const std::vector<std::vector<Element>>& table,
                        std::vector<std::string> labels) {
  return FiniteGroup::from_table(table, std::move(labels));
}

const std::vector<TransClass>& subgroup_classes(const FiniteGroup& g) { return g.classes(); }

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  const std::size_t n = source_->order();
  if (image_.size() != n) throw NotAHomomorphism("image list length differs from source order");
  for (Element x : image_) {
    if (x >= target_->order()) throw NotAHomomorphism("image element out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (image_[source_->mul(Element(a), Element(b))] !=
          target_->mul(image_[a], image_[b])) {
        throw NotAHomomorphism("image(xy) != image(x)image(y) for x=" + std::to_string(a) +
                               ", y=" + std::to_string(b));
      }
    }
  }
  std::vector<bool> hit(target_->order(), false);
  injective_ = true;
  for (Element x : image_) {
    if (hit[x]) injective_ = false;
    hit[x] = true;
  }
}

GroupHom GroupHom::identity(const GroupPtr& g) {
  std::vector<Element> image(g->order());
  std::iota(image.begin(), image.end(), Element{0});
  return GroupHom(g, g, std::move(image));
}

GroupHom GroupHom::trivial(const GroupPtr& source, const GroupPtr& target) {
  return GroupHom(source, target, std::vector<Element>(source->order(), 0));
}

}  // namespace pstab

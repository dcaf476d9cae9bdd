#include "pstab/perm.hpp"

#include <cassert>

namespace pstab {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  if (!is_permutation(images_)) {
    throw Error("image list is not a permutation");
  }
}

Perm::Perm(std::initializer_list<Point> images)
    : Perm(std::vector<Point>(images)) {}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) p.images_[i] = Point(i);
  return p;
}

Perm Perm::inverse() const {
  Perm p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = Point(i);
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm operator*(const Perm& a, const Perm& b) {
  assert(a.degree() == b.degree());
  Perm p;
  p.images_.resize(b.images_.size());
  for (std::size_t i = 0; i < b.images_.size(); ++i) p.images_[i] = a.images_[b.images_[i]];
  return p;
}

bool is_permutation(std::span<const Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point x : images) {
    if (x >= images.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::size_t hamming(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("hamming distance between different degrees");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.degree(); ++i) count += a[Point(i)] != b[Point(i)];
  return count;
}

std::size_t support_size(const Perm& a) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.degree(); ++i) count += a[Point(i)] != i;
  return count;
}

Rational normalized_hamming(const Perm& a, const Perm& b) {
  if (a.degree() == 0) return Rational(0);
  return Rational(static_cast<long>(hamming(a, b)), static_cast<long>(a.degree()));
}

Perm conjugate(const Perm& a, const Perm& pi) {
  std::vector<Point> images(a.degree());
  for (std::size_t x = 0; x < a.degree(); ++x) images[pi[Point(x)]] = pi[a[Point(x)]];
  return Perm(std::move(images));
}

Perm transposition(std::size_t degree, Point a, Point b) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = Point(i);
  std::swap(images[a], images[b]);
  return Perm(std::move(images));
}

std::vector<std::size_t> cycle_type(const Perm& a) {
  std::vector<std::size_t> counts(a.degree() + 1, 0);
  std::vector<bool> seen(a.degree(), false);
  for (std::size_t start = 0; start < a.degree(); ++start) {
    if (seen[start]) continue;
    std::size_t length = 0;
    for (Point x = Point(start); !seen[x]; x = a[x]) {
      seen[x] = true;
      ++length;
    }
    ++counts[length];
  }
  return counts;
}

}  // namespace pstab

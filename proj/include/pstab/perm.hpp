#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pstab/types.hpp"

namespace pstab {

// A permutation of {0, ..., n-1} stored as its image list. Composition is
// right-to-left: (a * b)(x) = a(b(x)), so that actions are left actions.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);
  Perm(std::initializer_list<Point> images);

  static Perm identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }

  const std::vector<Point>& images() const { return images_; }

  Perm inverse() const;
  bool is_identity() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm& a, const Perm& b) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) = default;

 private:
  std::vector<Point> images_;
};

/// True if the image list is a bijection of {0, ..., n-1}.
bool is_permutation(std::span<const Point> images);

/// Number of points where two permutations of the same degree disagree.
std::size_t hamming(const Perm& a, const Perm& b);

/// Number of points moved.
std::size_t support_size(const Perm& a);

/// Normalized Hamming distance d_X(a, b) = |{x : a(x) != b(x)}| / |X|.
Rational normalized_hamming(const Perm& a, const Perm& b);

/// Conjugate by a relabelling: returns pi * a * pi^-1.
Perm conjugate(const Perm& a, const Perm& pi);

/// Permutation swapping a and b.
Perm transposition(std::size_t degree, Point a, Point b);

/// Number of cycles of each length; entry k counts cycles of length k.
std::vector<std::size_t> cycle_type(const Perm& a);

}  // namespace pstab

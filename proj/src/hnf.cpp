#include "pstab/hnf.hpp"

#include <limits>
#include <utility>

namespace pstab {
namespace {

void swap_cols(Matrix<BigInt>& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) m.col(a).swap(m.col(b));
}

// col_a <- x col_a + y col_b, col_b <- u col_a + v col_b (simultaneously).
void combine(Matrix<BigInt>& m, Eigen::Index a, Eigen::Index b, const BigInt& x, const BigInt& y,
             const BigInt& u, const BigInt& v) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const BigInt ca = m(i, a), cb = m(i, b);
    m(i, a) = x * ca + y * cb;
    m(i, b) = u * ca + v * cb;
  }
}

BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

std::int64_t weighted_l1(const IntVector& v, const IntVector& w) {
  return (v.array().abs() * w.array()).sum();
}

}  // namespace

std::pair<Matrix<BigInt>, Matrix<BigInt>> column_hermite(const IntMatrix& d) {
  const Eigen::Index m = d.rows(), n = d.cols();
  Matrix<BigInt> h(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = BigInt(d(i, j));
  }
  Matrix<BigInt> u = Matrix<BigInt>::Identity(n, n);
  Eigen::Index pivot_col = 0;
  for (Eigen::Index row = 0; row < m && pivot_col < n; ++row) {
    // Reduce the row to a single nonzero at pivot_col by gcd steps.
    for (Eigen::Index j = pivot_col + 1; j < n; ++j) {
      if (h(row, j) == 0) continue;
      if (h(row, pivot_col) == 0) {
        swap_cols(h, pivot_col, j);
        swap_cols(u, pivot_col, j);
        continue;
      }
      BigInt x, y;
      const BigInt a = h(row, pivot_col), b = h(row, j);
      const BigInt g = ext_gcd(a, b, x, y);
      const BigInt u1 = -b / g, v1 = a / g;
      combine(h, pivot_col, j, x, y, u1, v1);
      combine(u, pivot_col, j, x, y, u1, v1);
    }
    if (h(row, pivot_col) == 0) continue;
    if (h(row, pivot_col) < 0) {
      h.col(pivot_col) = -h.col(pivot_col);
      u.col(pivot_col) = -u.col(pivot_col);
    }
    // Reduce earlier pivot columns modulo this pivot.
    for (Eigen::Index j = 0; j < pivot_col; ++j) {
      const BigInt q = floor_div(h(row, j), h(row, pivot_col));
      if (q == 0) continue;
      h.col(j) -= q * h.col(pivot_col);
      u.col(j) -= q * u.col(pivot_col);
    }
    ++pivot_col;
  }
  return {h, u};
}

IntMatrix kernel_basis(const IntMatrix& d, const IntVector& weights) {
  const Eigen::Index n = d.cols();
  auto [h, u] = column_hermite(d);
  std::vector<IntVector> basis;
  for (Eigen::Index j = 0; j < n; ++j) {
    bool zero = true;
    for (Eigen::Index i = 0; i < h.rows() && zero; ++i) zero = h(i, j) == 0;
    if (!zero) continue;
    IntVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (u(i, j) > std::numeric_limits<std::int64_t>::max() ||
          u(i, j) < std::numeric_limits<std::int64_t>::min()) {
        throw TooLarge("kernel basis entry exceeds 64 bits");
      }
      v[i] = u(i, j).convert_to<std::int64_t>();
    }
    basis.push_back(v);
  }
  // Greedy size reduction: replace b_i by b_i +- b_j while that shrinks it.
  bool changed = true;
  for (int round = 0; changed && round < 1000; ++round) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int sign : {1, -1}) {
          const IntVector c = basis[i] + sign * basis[j];
          if (weighted_l1(c, weights) < weighted_l1(basis[i], weights)) {
            basis[i] = c;
            changed = true;
          }
        }
      }
    }
  }
  IntMatrix out(n, Eigen::Index(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) out.col(Eigen::Index(k)) = basis[k];
  return out;
}

std::optional<RationalVector> solve_exact(const RationalMatrix& a, const RationalVector& b) {
  const Eigen::Index m = a.rows(), n = a.cols();
  RationalMatrix t(m, n + 1);
  t.leftCols(n) = a;
  t.col(n) = b;
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    Eigen::Index p = r;
    while (p < m && t(p, c) == 0) ++p;
    if (p == m) continue;
    t.row(p).swap(t.row(r));
    const Rational inv = Rational(1) / t(r, c);
    for (Eigen::Index j = 0; j <= n; ++j) t(r, j) *= inv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == r || t(i, c) == 0) continue;
      const Rational f = t(i, c);
      for (Eigen::Index j = 0; j <= n; ++j) t(i, j) -= f * t(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (Eigen::Index i = r; i < m; ++i) {
    if (t(i, n) != 0) return std::nullopt;
  }
  RationalVector x = RationalVector::Zero(n);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = t(Eigen::Index(k), n);
  return x;
}

}  // namespace pstab

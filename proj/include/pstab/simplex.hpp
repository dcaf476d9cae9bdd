#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pstab/types.hpp"

namespace pstab {

template <typename Scalar>
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Vector<Scalar> x;
  Scalar objective{0};
  std::size_t pivots = 0;

  bool optimal() const { return status == Status::Optimal; }
};

// Minimize c.x subject to sparse linear rows and x >= 0, by a dense two-phase
// tableau simplex with Bland's rule. Exact when Scalar is exact.
template <typename Scalar>
class LinearProgram {
 public:
  enum class Sense { Le, Eq, Ge };
  using Term = std::pair<std::size_t, Scalar>;

  explicit LinearProgram(std::size_t variables)
      : n_(variables), cost_(Vector<Scalar>::Zero(Eigen::Index(variables))) {}

  std::size_t variables() const { return n_; }
  std::size_t rows() const { return rows_.size(); }

  void add_row(std::vector<Term> terms, Sense sense, Scalar rhs) {
    rows_.push_back({std::move(terms), sense, std::move(rhs)});
  }
  void set_objective(Vector<Scalar> c) { cost_ = std::move(c); }
  void set_cost(std::size_t var, Scalar c) { cost_[Eigen::Index(var)] = std::move(c); }

  LpResult<Scalar> solve() const;

 private:
  struct Row {
    std::vector<Term> terms;
    Sense sense;
    Scalar rhs;
  };

  std::size_t n_;
  Vector<Scalar> cost_;
  std::vector<Row> rows_;
};

namespace detail {

template <typename Scalar>
struct Tableau {
  Matrix<Scalar> t;                 // constraint rows, last column is the rhs
  std::vector<std::size_t> basis;   // basic column per row
  std::vector<bool> live;           // rows not dropped as redundant
  std::size_t pivots = 0;

  std::size_t cols() const { return std::size_t(t.cols()) - 1; }

  void pivot(std::size_t r, std::size_t c) {
    const Eigen::Index R = Eigen::Index(r), C = Eigen::Index(c), W = t.cols();
    const Scalar p = t(R, C);
    for (Eigen::Index j = 0; j < W; ++j) {
      if (t(R, j) != 0) t(R, j) /= p;
    }
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i == R || !live[std::size_t(i)] || t(i, C) == 0) continue;
      const Scalar f = t(i, C);
      for (Eigen::Index j = 0; j < W; ++j) {
        if (t(R, j) != 0) t(i, j) -= f * t(R, j);
      }
    }
    basis[r] = c;
    ++pivots;
  }

  // Runs Bland's rule for cost vector `cost` over columns [0, allowed).
  // Returns false if unbounded.
  bool optimize(const std::vector<Scalar>& cost, std::size_t allowed) {
    for (;;) {
      // Reduced costs c_j - c_B B^-1 A_j, computed from the tableau.
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed && enter == allowed; ++j) {
        Scalar rc = cost[j];
        if (rc == 0 && is_basic(j)) continue;
        for (std::size_t i = 0; i < basis.size(); ++i) {
          if (!live[i]) continue;
          const Scalar& a = t(Eigen::Index(i), Eigen::Index(j));
          if (a != 0 && cost[basis[i]] != 0) rc -= cost[basis[i]] * a;
        }
        if (rc < 0) enter = j;
      }
      if (enter == allowed) return true;
      std::size_t leave = basis.size();
      Scalar best{0};
      const Eigen::Index rhs = t.cols() - 1;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!live[i]) continue;
        const Scalar& a = t(Eigen::Index(i), Eigen::Index(enter));
        if (a <= 0) continue;
        Scalar ratio = t(Eigen::Index(i), rhs) / a;
        if (leave == basis.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == basis.size()) return false;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (live[i] && basis[i] == j) return true;
    }
    return false;
  }

  Scalar value(const std::vector<Scalar>& cost) const {
    Scalar v{0};
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (live[i] && cost[basis[i]] != 0) v += cost[basis[i]] * t(Eigen::Index(i), t.cols() - 1);
    }
    return v;
  }
};

}  // namespace detail

template <typename Scalar>
LpResult<Scalar> LinearProgram<Scalar>::solve() const {
  const std::size_t m = rows_.size();
  // Column layout: structural, one slack per inequality, one artificial per
  // row that lacks a usable slack.
  std::vector<std::size_t> slack(m, SIZE_MAX);
  std::size_t cols = n_;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows_[i].sense != Sense::Eq) slack[i] = cols++;
  }
  const std::size_t structural_and_slack = cols;
  std::vector<bool> negate(m, false);
  std::vector<std::size_t> artificial(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    negate[i] = rows_[i].rhs < 0;
    // A <= row with rhs >= 0 starts with its slack basic.
    const bool slack_basic = rows_[i].sense == Sense::Le && !negate[i];
    const bool slack_basic_neg = rows_[i].sense == Sense::Ge && negate[i];
    if (!slack_basic && !slack_basic_neg) artificial[i] = cols++;
  }

  detail::Tableau<Scalar> tab;
  tab.t = Matrix<Scalar>::Zero(Eigen::Index(m), Eigen::Index(cols + 1));
  tab.basis.assign(m, 0);
  tab.live.assign(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index r = Eigen::Index(i);
    const Scalar sign = negate[i] ? Scalar(-1) : Scalar(1);
    for (const auto& [j, a] : rows_[i].terms) tab.t(r, Eigen::Index(j)) += sign * a;
    if (slack[i] != SIZE_MAX) {
      const Scalar s = rows_[i].sense == Sense::Le ? Scalar(1) : Scalar(-1);
      tab.t(r, Eigen::Index(slack[i])) = sign * s;
    }
    tab.t(r, Eigen::Index(cols)) = sign * rows_[i].rhs;
    if (artificial[i] != SIZE_MAX) {
      tab.t(r, Eigen::Index(artificial[i])) = 1;
      tab.basis[i] = artificial[i];
    } else {
      tab.basis[i] = slack[i];
    }
  }

  LpResult<Scalar> result;
  // Phase I: minimize the sum of artificials.
  std::vector<Scalar> phase1(cols, Scalar(0));
  bool any_artificial = false;
  for (std::size_t i = 0; i < m; ++i) {
    if (artificial[i] != SIZE_MAX) {
      phase1[artificial[i]] = 1;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    tab.optimize(phase1, cols);
    if (tab.value(phase1) != 0) {
      result.status = LpResult<Scalar>::Status::Infeasible;
      result.pivots = tab.pivots;
      return result;
    }
    // Drive remaining (zero) artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < m; ++i) {
      if (!tab.live[i] || tab.basis[i] < structural_and_slack) continue;
      std::size_t enter = structural_and_slack;
      for (std::size_t j = 0; j < structural_and_slack; ++j) {
        if (tab.t(Eigen::Index(i), Eigen::Index(j)) != 0) {
          enter = j;
          break;
        }
      }
      if (enter == structural_and_slack) {
        tab.live[i] = false;
      } else {
        tab.pivot(i, enter);
      }
    }
  }

  std::vector<Scalar> phase2(cols, Scalar(0));
  for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[Eigen::Index(j)];
  const bool bounded = tab.optimize(phase2, structural_and_slack);
  result.pivots = tab.pivots;
  if (!bounded) {
    result.status = LpResult<Scalar>::Status::Unbounded;
    return result;
  }
  result.status = LpResult<Scalar>::Status::Optimal;
  result.x = Vector<Scalar>::Zero(Eigen::Index(n_));
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.live[i] && tab.basis[i] < n_) {
      result.x[Eigen::Index(tab.basis[i])] = tab.t(Eigen::Index(i), Eigen::Index(cols));
    }
  }
  result.objective = tab.value(phase2);
  return result;
}

}  // namespace pstab

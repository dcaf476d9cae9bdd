#pragma once

#include <optional>

#include "pstab/types.hpp"

namespace pstab {

/// Basis of the integer lattice ker(d) as the columns of an n x k matrix.
/// Column-style Hermite reduction of [d; I] with exact integers, followed by a
/// greedy pairwise size reduction under the weighted L1 norm. Throws TooLarge
/// if an entry does not fit in 64 bits.
IntMatrix kernel_basis(const IntMatrix& d, const IntVector& weights);

/// Column Hermite normal form H = d U with U unimodular; returns (H, U).
std::pair<Matrix<BigInt>, Matrix<BigInt>> column_hermite(const IntMatrix& d);

/// Exact solution of a x = b when one exists (a of full column rank or
/// consistent); nullopt when inconsistent.
std::optional<RationalVector> solve_exact(const RationalMatrix& a, const RationalVector& b);

}  // namespace pstab

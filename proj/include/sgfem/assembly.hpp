#pragma once

#include "sgfem/quadrature.hpp"
#include "sgfem/sparse.hpp"
#include "sgfem/types.hpp"

namespace sgfem {

/// 1D stiffness matrix a2 = N (-1 2 -1) on the N-1 interior hats.
SparseMatrix stiffness_1d(Index n);

/// 1D mass matrix a0 = (1 4 1) / (6N) on the N-1 interior hats.
SparseMatrix mass_1d(Index n);

/// System matrix of -Lap u + u on the N x N grid, A = a0 (x) a2 + a2 (x) a0 + a0 (x) a0,
/// assembled as kron(a0, a2) + kron(a2 + a0, a0). Unknowns are ordered lexicographically with
/// x fastest: node (x_i, y_j), 1 <= i, j <= N-1, has 0-based index (i-1) + (N-1)(j-1).
SparseMatrix system_2d(Index n);

/// Load vector b_k = (f, phi_k) by per-cell tensor quadrature, ordered as in system_2d.
/// Cells are visited row by row and scattered in a fixed order, so results are reproducible.
Coeffs rhs_2d(Index n, const Field& f, const QuadratureRule& rule = two_point_gauss());

/// 0-based lexicographic index of interior node (i, j) on the N x N grid.
constexpr Index lex_index(Index i, Index j, Index n) noexcept { return (i - 1) + (n - 1) * (j - 1); }

} // namespace sgfem

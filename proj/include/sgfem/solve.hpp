#pragma once

#include "sgfem/sparse.hpp"

#include <span>
#include <string>

namespace sgfem {

enum class SolverKind {
    direct, ///< sparse Cholesky with fill-reducing ordering (CHOLMOD)
    cg,     ///< Jacobi-preconditioned conjugate gradients
};

struct SolveOptions {
    SolverKind kind = SolverKind::direct;
    /// Required relative residual ||Mx - b||_2 / ||b||_2.
    double tol = 1e-10;
    /// CG iteration cap; 0 selects max(1000, 10 n).
    Index max_iterations = 0;
};

struct SolveResult {
    Coeffs x;
    std::string algorithm;
    double relative_residual = 0.0;
    Index iterations = 0;
};

/// Solves M x = rhs for symmetric positive definite M.
///
/// The direct path factorizes once and applies up to three steps of iterative refinement if
/// the first solve misses `tol`. Throws SolverError when M is found not to be positive
/// definite (failed pivot, CG curvature breakdown) or the tolerance cannot be met.
SolveResult spd_solve(const SparseMatrix& m, std::span<const double> rhs, const SolveOptions& options = {});

std::string_view to_string(SolverKind kind) noexcept;

} // namespace sgfem

#pragma once

#include "sgfem/sparse.hpp"
#include "sgfem/types.hpp"

#include <span>
#include <vector>

namespace sgfem {

/// Nodal values of a piecewise bilinear function on the Nx x Ny grid, boundary included.
/// values[i + (Nx+1) j] is the value at (i/Nx, j/Ny).
class GridFunction {
public:
    GridFunction(Index nx, Index ny);

    Index nx() const noexcept { return nx_; }
    Index ny() const noexcept { return ny_; }

    double& at(Index i, Index j) noexcept { return values_[static_cast<std::size_t>(i + (nx_ + 1) * j)]; }
    double at(Index i, Index j) const noexcept { return values_[static_cast<std::size_t>(i + (nx_ + 1) * j)]; }

    std::span<const double> values() const noexcept { return values_; }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double s);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

    /// Largest absolute nodal value.
    double max_abs() const noexcept;

private:
    Index nx_;
    Index ny_;
    std::vector<double> values_;
};

/// I_{Nx,Ny} u: samples u at the nodes of the Nx x Ny grid.
GridFunction nodal_interp(const Field& u, Index nx, Index ny);

/// The same piecewise bilinear function expressed on a refinement of its grid
/// (requires g.nx() | nx and g.ny() | ny).
GridFunction refine(const GridFunction& g, Index nx, Index ny);

/// Partial operator I_{M,0} applied to a grid function: each horizontal line is re-interpolated
/// from the x nodes of the M-interval mesh. M must divide g.nx().
GridFunction interp_x(const GridFunction& g, Index m);

/// Partial operator I_{0,M}, the y-direction counterpart of interp_x.
GridFunction interp_y(const GridFunction& g, Index m);

/// Two-scale interpolant I_{N,s} + I_{s,N} - I_{s,s} on the fine N x N grid.
GridFunction two_scale_interp(const Field& u, Index n, Index sigma);

/// Signed term coeff * I_{Nx,Ny} in a combination of grid interpolants.
struct CombinationTerm {
    Index nx;
    Index ny;
    int coeff;

    friend bool operator==(const CombinationTerm&, const CombinationTerm&) = default;
};

/// Closed-form terms of the level-k multiscale interpolant:
/// sum_{i=0..k} I_{N/2^i, N/2^(k-i)} - sum_{i=1..k} I_{N/2^i, N/2^(k+1-i)}.
std::vector<CombinationTerm> multiscale_terms(Index n, int k);

/// Terms obtained by starting from I_{N,N} and k times replacing every positively signed term
/// I_{a,b} by I_{a,b/2} + I_{a/2,b} - I_{a/2,b/2}, collecting like terms after each pass.
/// Sorted by (nx, ny) descending, zero coefficients dropped.
std::vector<CombinationTerm> multiscale_terms_recursive(Index n, int k);

/// Level-k multiscale interpolant on the N x N grid from the closed-form terms.
GridFunction multiscale_interp(const Field& u, Index n, int k);

/// Level-k multiscale interpolant via the recursive construction, each term evaluated as the
/// composition I_{a,0} I_{0,b} of partial operators on the fine samples of u.
GridFunction multiscale_interp_recursive(const Field& u, Index n, int k);

/// Interior nodal values in lexicographic order (x fastest), i.e. coefficients in the
/// classical hat basis; requires nx == ny.
Coeffs interior_coeffs(const GridFunction& g);

/// sqrt(v^T A v) with A the classical system matrix: the energy norm of the FE function with
/// coefficients v. A slightly negative quadratic form (|v^T A v| <= 1e-14 ||v||^2) is clamped
/// to zero with a warning on stderr; anything more negative throws DomainError.
double energy_norm(const SparseMatrix& a, std::span<const double> v);

} // namespace sgfem

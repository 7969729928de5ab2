#pragma once

#include "sgfem/sparse.hpp"

#include <cstdint>
#include <vector>

namespace sgfem {

/// Uniform mesh of [0,1] with N intervals; nodes x_i = i/N, i = 0..N.
class Mesh1D {
public:
    explicit Mesh1D(std::int64_t intervals);

    std::int64_t intervals() const noexcept { return n_; }
    double width() const noexcept { return 1.0 / static_cast<double>(n_); }
    double node(std::int64_t i) const noexcept { return static_cast<double>(i) / static_cast<double>(n_); }
    std::vector<double> nodes() const;

    /// Number of interior nodes, N - 1.
    std::int64_t interior_count() const noexcept { return n_ - 1; }

    friend bool operator==(const Mesh1D&, const Mesh1D&) = default;

private:
    std::int64_t n_;
};

/// Hat function psi_i^N at x. Piecewise linear, one at x_i, supported on [x_{i-1}, x_{i+1}].
/// Throws DomainError unless 1 <= i <= N-1.
double hat_eval(const Mesh1D& mesh, std::int64_t i, double x);

/// Prolongation from the interior hats of `coarse` (M intervals) to the interior hats of
/// `fine` (N intervals): an (N-1) x (M-1) matrix whose column j holds psi_j^M at the fine
/// interior nodes. Boundary rows and columns are excluded. Requires M | N and M >= 2.
SparseMatrix prolongation_1d(const Mesh1D& fine, const Mesh1D& coarse);

} // namespace sgfem

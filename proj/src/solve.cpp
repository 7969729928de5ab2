#include "sgfem/solve.hpp"

#include "sgfem/error.hpp"

#include <cholmod.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

namespace sgfem {

namespace {

static_assert(std::is_same_v<SuiteSparse_long, Index>, "CHOLMOD long interface must match Index");

double relative_residual(const SparseMatrix& m, std::span<const double> x, std::span<const double> rhs,
                         Coeffs* residual_out = nullptr)
{
    Coeffs r = m.multiply(x);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = rhs[i] - r[i];
    }
    const double bn = norm2(rhs);
    const double rel = bn == 0.0 ? norm2(r) : norm2(r) / bn;
    if (residual_out) {
        *residual_out = std::move(r);
    }
    return rel;
}

class Cholmod {
public:
    Cholmod()
    {
        cholmod_l_start(&common_);
        common_.print = 0;
        common_.error_handler = nullptr;
        // LL' everywhere, so an indefinite matrix shows up as a failed pivot.
        common_.final_ll = 1;
    }
    ~Cholmod()
    {
        if (factor_) {
            cholmod_l_free_factor(&factor_, &common_);
        }
        cholmod_l_finish(&common_);
    }
    Cholmod(const Cholmod&) = delete;
    Cholmod& operator=(const Cholmod&) = delete;

    void factorize(const SparseMatrix& m)
    {
        // For symmetric M the CSR arrays are also valid CSC arrays; stype = 1 reads the upper
        // triangle only.
        cholmod_sparse a{};
        a.nrow = static_cast<std::size_t>(m.rows());
        a.ncol = static_cast<std::size_t>(m.cols());
        a.nzmax = static_cast<std::size_t>(m.nnz());
        a.p = const_cast<Index*>(m.row_offsets().data());
        a.i = const_cast<Index*>(m.col_indices().data());
        a.x = const_cast<double*>(m.values().data());
        a.stype = 1;
        a.itype = CHOLMOD_LONG;
        a.xtype = CHOLMOD_REAL;
        a.dtype = CHOLMOD_DOUBLE;
        a.sorted = 1;
        a.packed = 1;
        a_ = a;

        factor_ = cholmod_l_analyze(&a_, &common_);
        if (!factor_ || common_.status < CHOLMOD_OK) {
            throw SolverError("CHOLMOD analysis failed (status " + std::to_string(common_.status) + ")");
        }
        cholmod_l_factorize(&a_, factor_, &common_);
        if (common_.status == CHOLMOD_NOT_POSDEF || factor_->minor < factor_->n) {
            throw SolverError("matrix is not positive definite: Cholesky pivot failed at column "
                              + std::to_string(factor_->minor) + " of " + std::to_string(factor_->n));
        }
        if (!factor_->is_super && !factor_->is_ll) {
            // Simplicial LDL': the diagonal of D sits at the head of each column.
            const auto* lp = static_cast<const Index*>(factor_->p);
            const auto* lx = static_cast<const double*>(factor_->x);
            for (std::size_t j = 0; j < factor_->n; ++j) {
                if (!(lx[lp[j]] > 0.0)) {
                    throw SolverError("matrix is not positive definite: pivot " + std::to_string(lx[lp[j]])
                                      + " at column " + std::to_string(j));
                }
            }
        }
        if (common_.status < CHOLMOD_OK) {
            throw SolverError("CHOLMOD factorization failed (status " + std::to_string(common_.status) + ")");
        }
    }

    Coeffs solve(std::span<const double> rhs)
    {
        cholmod_dense* b = cholmod_l_allocate_dense(rhs.size(), 1, rhs.size(), CHOLMOD_REAL, &common_);
        if (!b) {
            throw SolverError("CHOLMOD could not allocate the right-hand side");
        }
        std::copy(rhs.begin(), rhs.end(), static_cast<double*>(b->x));
        cholmod_dense* x = cholmod_l_solve(CHOLMOD_A, factor_, b, &common_);
        cholmod_l_free_dense(&b, &common_);
        if (!x) {
            throw SolverError("CHOLMOD solve failed (status " + std::to_string(common_.status) + ")");
        }
        const auto* xv = static_cast<const double*>(x->x);
        Coeffs out(xv, xv + rhs.size());
        cholmod_l_free_dense(&x, &common_);
        return out;
    }

    bool supernodal() const noexcept { return factor_ && factor_->is_super; }

private:
    cholmod_common common_{};
    cholmod_sparse a_{};
    cholmod_factor* factor_ = nullptr;
};

SolveResult solve_direct(const SparseMatrix& m, std::span<const double> rhs, double tol)
{
    Cholmod chol;
    chol.factorize(m);
    SolveResult out;
    out.x = chol.solve(rhs);
    out.algorithm = chol.supernodal() ? "cholmod-supernodal" : "cholmod-simplicial";
    Coeffs r;
    out.relative_residual = relative_residual(m, out.x, rhs, &r);
    while (out.relative_residual > tol && out.iterations < 3) {
        const Coeffs dx = chol.solve(r);
        for (std::size_t i = 0; i < dx.size(); ++i) {
            out.x[i] += dx[i];
        }
        ++out.iterations;
        out.relative_residual = relative_residual(m, out.x, rhs, &r);
    }
    if (out.relative_residual > tol) {
        throw SolverError("direct solve reached relative residual " + std::to_string(out.relative_residual)
                          + " after refinement, above tolerance " + std::to_string(tol));
    }
    return out;
}

SolveResult solve_cg(const SparseMatrix& m, std::span<const double> rhs, double tol, Index max_iterations)
{
    const auto n = static_cast<std::size_t>(m.rows());
    Coeffs inv_diag(n);
    for (Index i = 0; i < m.rows(); ++i) {
        const double d = m.coeff(i, i);
        if (!(d > 0.0)) {
            throw SolverError("matrix is not positive definite: diagonal entry " + std::to_string(i)
                              + " is " + std::to_string(d));
        }
        inv_diag[static_cast<std::size_t>(i)] = 1.0 / d;
    }
    const Index cap = max_iterations > 0 ? max_iterations : std::max<Index>(1000, 10 * m.rows());

    SolveResult out;
    out.algorithm = "jacobi-pcg";
    out.x.assign(n, 0.0);
    const double bn = norm2(rhs);
    if (bn == 0.0) {
        return out;
    }
    Coeffs r(rhs.begin(), rhs.end());
    Coeffs z(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = inv_diag[i] * r[i];
    }
    Coeffs p = z;
    double rz = dot(r, z);
    double rel = 1.0;
    for (Index it = 1; it <= cap; ++it) {
        const Coeffs q = m.multiply(p);
        const double curvature = dot(p, q);
        if (!(curvature > 0.0)) {
            throw SolverError("matrix is not positive definite: CG breakdown at iteration " + std::to_string(it)
                              + " (p^T M p = " + std::to_string(curvature) + ")");
        }
        const double alpha = rz / curvature;
        for (std::size_t i = 0; i < n; ++i) {
            out.x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        out.iterations = it;
        rel = norm2(r) / bn;
        if (rel <= tol) {
            // The recursive residual drifts; confirm with the true one.
            rel = relative_residual(m, out.x, rhs, &r);
            if (rel <= tol) {
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = inv_diag[i] * r[i];
        }
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = z[i] + beta * p[i];
        }
    }
    out.relative_residual = rel;
    if (rel > tol) {
        throw SolverError("CG did not reach tolerance " + std::to_string(tol) + " in " + std::to_string(cap)
                          + " iterations (relative residual " + std::to_string(rel) + ")");
    }
    return out;
}

} // namespace

SolveResult spd_solve(const SparseMatrix& m, std::span<const double> rhs, const SolveOptions& options)
{
    if (m.rows() != m.cols()) {
        throw DimensionError("spd_solve: matrix is not square");
    }
    if (rhs.size() != static_cast<std::size_t>(m.rows())) {
        throw DimensionError("spd_solve: right-hand side length " + std::to_string(rhs.size())
                             + " does not match order " + std::to_string(m.rows()));
    }
    if (m.rows() == 0) {
        return SolveResult{{}, std::string(to_string(options.kind)), 0.0, 0};
    }
    switch (options.kind) {
    case SolverKind::direct:
        return solve_direct(m, rhs, options.tol);
    case SolverKind::cg:
        return solve_cg(m, rhs, options.tol, options.max_iterations);
    }
    throw SolverError("unknown solver kind");
}

std::string_view to_string(SolverKind kind) noexcept
{
    switch (kind) {
    case SolverKind::direct:
        return "direct";
    case SolverKind::cg:
        return "cg";
    }
    return "unknown";
}

} // namespace sgfem

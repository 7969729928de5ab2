#include "sgfem/assembly.hpp"

#include "sgfem/error.hpp"

#include <string>

namespace sgfem {

namespace {

void require_grid(Index n, const char* what)
{
    if (n < 2) {
        throw DomainError(std::string(what) + ": need N >= 2, got " + std::to_string(n));
    }
}

SparseMatrix tridiagonal(Index n, double diag, double off)
{
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(3 * n));
    for (Index i = 0; i < n; ++i) {
        if (i > 0) {
            t.push_back({i, i - 1, off});
        }
        t.push_back({i, i, diag});
        if (i + 1 < n) {
            t.push_back({i, i + 1, off});
        }
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

} // namespace

SparseMatrix stiffness_1d(Index n)
{
    require_grid(n, "stiffness_1d");
    const auto nd = static_cast<double>(n);
    return tridiagonal(n - 1, 2.0 * nd, -nd);
}

SparseMatrix mass_1d(Index n)
{
    require_grid(n, "mass_1d");
    const double scale = 6.0 * static_cast<double>(n);
    return tridiagonal(n - 1, 4.0 / scale, 1.0 / scale);
}

SparseMatrix system_2d(Index n)
{
    require_grid(n, "system_2d");
    const SparseMatrix a2 = stiffness_1d(n);
    const SparseMatrix a0 = mass_1d(n);
    return add(kron(a0, a2), kron(add(a2, a0), a0));
}

Coeffs rhs_2d(Index n, const Field& f, const QuadratureRule& rule)
{
    require_grid(n, "rhs_2d");
    const double h = 1.0 / static_cast<double>(n);
    Coeffs b(static_cast<std::size_t>((n - 1) * (n - 1)), 0.0);

    const auto scatter = [&](Index i, Index j, double v) {
        if (i >= 1 && i <= n - 1 && j >= 1 && j <= n - 1) {
            b[static_cast<std::size_t>(lex_index(i, j, n))] += v;
        }
    };

    for (Index cy = 0; cy < n; ++cy) {
        const double y0 = static_cast<double>(cy) * h;
        for (Index cx = 0; cx < n; ++cx) {
            const double x0 = static_cast<double>(cx) * h;
            // Integrals of f against the four bilinear corner functions of this cell.
            double c00 = 0.0;
            double c10 = 0.0;
            double c01 = 0.0;
            double c11 = 0.0;
            for (const auto& qy : rule.points) {
                const double t = qy.abscissa;
                for (const auto& qx : rule.points) {
                    const double s = qx.abscissa;
                    const double w = qx.weight * qy.weight * h * h * f(x0 + s * h, y0 + t * h);
                    c00 += w * (1.0 - s) * (1.0 - t);
                    c10 += w * s * (1.0 - t);
                    c01 += w * (1.0 - s) * t;
                    c11 += w * s * t;
                }
            }
            scatter(cx, cy, c00);
            scatter(cx + 1, cy, c10);
            scatter(cx, cy + 1, c01);
            scatter(cx + 1, cy + 1, c11);
        }
    }
    return b;
}

} // namespace sgfem

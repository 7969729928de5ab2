#include "sgfem/mesh.hpp"

#include "sgfem/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sgfem {

Mesh1D::Mesh1D(std::int64_t intervals) : n_(intervals)
{
    if (intervals < 1) {
        throw DomainError("Mesh1D: interval count must be positive, got " + std::to_string(intervals));
    }
}

std::vector<double> Mesh1D::nodes() const
{
    std::vector<double> x(static_cast<std::size_t>(n_ + 1));
    for (std::int64_t i = 0; i <= n_; ++i) {
        x[static_cast<std::size_t>(i)] = node(i);
    }
    return x;
}

double hat_eval(const Mesh1D& mesh, std::int64_t i, double x)
{
    const std::int64_t n = mesh.intervals();
    if (i < 1 || i > n - 1) {
        throw DomainError("hat_eval: index " + std::to_string(i) + " outside interior range 1.."
                          + std::to_string(n - 1));
    }
    double s = x * static_cast<double>(n);
    // Snap to the node when x is a mesh node up to rounding, so psi_i(x_j) = delta_ij exactly.
    const double nearest = std::nearbyint(s);
    if (std::abs(s - nearest) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, nearest)) {
        s = nearest;
    }
    const double a = std::abs(s - static_cast<double>(i));
    return a < 1.0 ? 1.0 - a : 0.0;
}

SparseMatrix prolongation_1d(const Mesh1D& fine, const Mesh1D& coarse)
{
    const std::int64_t n = fine.intervals();
    const std::int64_t m = coarse.intervals();
    if (m < 2) {
        throw DomainError("prolongation_1d: coarse mesh needs at least 2 intervals");
    }
    if (n % m != 0) {
        throw DivisibilityError("prolongation_1d: coarse interval count " + std::to_string(m)
                                + " does not divide fine count " + std::to_string(n));
    }
    const std::int64_t ratio = n / m;

    // Fine interior node r (1-based) lies in coarse cell c = floor(r / ratio) at offset
    // s = r mod ratio. It sees coarse hat c with weight (ratio - s)/ratio and hat c+1 with s/ratio.
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n));
    std::vector<std::int64_t> cols;
    std::vector<double> vals;
    cols.reserve(static_cast<std::size_t>(2 * (n - 1)));
    vals.reserve(static_cast<std::size_t>(2 * (n - 1)));
    const auto weight = [ratio](std::int64_t num) {
        return static_cast<double>(num) / static_cast<double>(ratio);
    };
    offsets[0] = 0;
    for (std::int64_t r = 1; r <= n - 1; ++r) {
        const std::int64_t c = r / ratio;
        const std::int64_t s = r % ratio;
        if (s == 0) {
            cols.push_back(c - 1);
            vals.push_back(1.0);
        } else {
            if (c >= 1) {
                cols.push_back(c - 1);
                vals.push_back(weight(ratio - s));
            }
            if (c + 1 <= m - 1) {
                cols.push_back(c);
                vals.push_back(weight(s));
            }
        }
        offsets[static_cast<std::size_t>(r)] = static_cast<std::int64_t>(cols.size());
    }
    return SparseMatrix(n - 1, m - 1, std::move(offsets), std::move(cols), std::move(vals));
}

} // namespace sgfem

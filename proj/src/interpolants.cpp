#include "sgfem/interpolants.hpp"

#include "sgfem/error.hpp"
#include "sgfem/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <string>

namespace sgfem {

GridFunction::GridFunction(Index nx, Index ny) : nx_(nx), ny_(ny)
{
    if (nx < 1 || ny < 1) {
        throw DomainError("GridFunction: interval counts must be positive");
    }
    values_.assign(static_cast<std::size_t>((nx + 1) * (ny + 1)), 0.0);
}

GridFunction& GridFunction::operator+=(const GridFunction& other)
{
    if (other.nx_ != nx_ || other.ny_ != ny_) {
        throw DimensionError("GridFunction: grids differ");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other)
{
    if (other.nx_ != nx_ || other.ny_ != ny_) {
        throw DimensionError("GridFunction: grids differ");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] -= other.values_[i];
    }
    return *this;
}

GridFunction& GridFunction::operator*=(double s)
{
    for (double& v : values_) {
        v *= s;
    }
    return *this;
}

double GridFunction::max_abs() const noexcept
{
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

GridFunction nodal_interp(const Field& u, Index nx, Index ny)
{
    GridFunction g(nx, ny);
    for (Index j = 0; j <= ny; ++j) {
        const double y = static_cast<double>(j) / static_cast<double>(ny);
        for (Index i = 0; i <= nx; ++i) {
            g.at(i, j) = u(static_cast<double>(i) / static_cast<double>(nx), y);
        }
    }
    return g;
}

namespace {

void require_divides(Index coarse, Index fine, const char* what)
{
    if (coarse < 1 || fine % coarse != 0) {
        throw DivisibilityError(std::string(what) + ": " + std::to_string(coarse) + " does not divide "
                                + std::to_string(fine));
    }
}

// Linear interpolation weight of the left coarse node for fine offset s within a cell of r.
double left_weight(Index s, Index r)
{
    return static_cast<double>(r - s) / static_cast<double>(r);
}

double right_weight(Index s, Index r)
{
    return static_cast<double>(s) / static_cast<double>(r);
}

} // namespace

GridFunction refine(const GridFunction& g, Index nx, Index ny)
{
    require_divides(g.nx(), nx, "refine");
    require_divides(g.ny(), ny, "refine");
    const Index rx = nx / g.nx();
    const Index ry = ny / g.ny();

    // x first on the coarse rows, then y; both passes are exact linear interpolation.
    GridFunction half(nx, g.ny());
    for (Index j = 0; j <= g.ny(); ++j) {
        for (Index i = 0; i <= nx; ++i) {
            const Index c = i / rx;
            const Index s = i % rx;
            half.at(i, j) = s == 0 ? g.at(c, j) : left_weight(s, rx) * g.at(c, j) + right_weight(s, rx) * g.at(c + 1, j);
        }
    }
    GridFunction out(nx, ny);
    for (Index j = 0; j <= ny; ++j) {
        const Index c = j / ry;
        const Index s = j % ry;
        for (Index i = 0; i <= nx; ++i) {
            out.at(i, j) = s == 0 ? half.at(i, c) : left_weight(s, ry) * half.at(i, c) + right_weight(s, ry) * half.at(i, c + 1);
        }
    }
    return out;
}

GridFunction interp_x(const GridFunction& g, Index m)
{
    require_divides(m, g.nx(), "interp_x");
    const Index r = g.nx() / m;
    GridFunction out(g.nx(), g.ny());
    for (Index j = 0; j <= g.ny(); ++j) {
        for (Index i = 0; i <= g.nx(); ++i) {
            const Index c = (i / r) * r;
            const Index s = i % r;
            out.at(i, j) = s == 0 ? g.at(c, j) : left_weight(s, r) * g.at(c, j) + right_weight(s, r) * g.at(c + r, j);
        }
    }
    return out;
}

GridFunction interp_y(const GridFunction& g, Index m)
{
    require_divides(m, g.ny(), "interp_y");
    const Index r = g.ny() / m;
    GridFunction out(g.nx(), g.ny());
    for (Index j = 0; j <= g.ny(); ++j) {
        const Index c = (j / r) * r;
        const Index s = j % r;
        for (Index i = 0; i <= g.nx(); ++i) {
            out.at(i, j) = s == 0 ? g.at(i, c) : left_weight(s, r) * g.at(i, c) + right_weight(s, r) * g.at(i, c + r);
        }
    }
    return out;
}

GridFunction two_scale_interp(const Field& u, Index n, Index sigma)
{
    if (sigma < 1 || n % sigma != 0) {
        throw DivisibilityError("two_scale_interp: sigma = " + std::to_string(sigma) + " does not divide N = "
                                + std::to_string(n));
    }
    GridFunction out = refine(nodal_interp(u, n, sigma), n, n);
    out += refine(nodal_interp(u, sigma, n), n, n);
    out -= refine(nodal_interp(u, sigma, sigma), n, n);
    return out;
}

std::vector<CombinationTerm> multiscale_terms(Index n, int k)
{
    MethodConfig{Method::multiscale, n, std::nullopt, k}.validate();
    std::vector<CombinationTerm> terms;
    for (int i = 0; i <= k; ++i) {
        terms.push_back({n >> i, n >> (k - i), 1});
    }
    for (int i = 1; i <= k; ++i) {
        terms.push_back({n >> i, n >> (k + 1 - i), -1});
    }
    return terms;
}

std::vector<CombinationTerm> multiscale_terms_recursive(Index n, int k)
{
    MethodConfig{Method::multiscale, n, std::nullopt, k}.validate();
    // Keyed by (nx, ny), descending so the output order is deterministic.
    using Key = std::pair<Index, Index>;
    std::map<Key, int, std::greater<>> terms{{{n, n}, 1}};
    for (int level = 1; level <= k; ++level) {
        std::map<Key, int, std::greater<>> next;
        for (const auto& [grid, c] : terms) {
            if (c <= 0) {
                next[grid] += c;
                continue;
            }
            const auto [a, b] = grid;
            next[{a, b / 2}] += c;
            next[{a / 2, b}] += c;
            next[{a / 2, b / 2}] -= c;
        }
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        terms = std::move(next);
    }
    std::vector<CombinationTerm> out;
    for (const auto& [grid, c] : terms) {
        out.push_back({grid.first, grid.second, c});
    }
    return out;
}

GridFunction multiscale_interp(const Field& u, Index n, int k)
{
    GridFunction out(n, n);
    for (const auto& t : multiscale_terms(n, k)) {
        GridFunction term = refine(nodal_interp(u, t.nx, t.ny), n, n);
        term *= static_cast<double>(t.coeff);
        out += term;
    }
    return out;
}

GridFunction multiscale_interp_recursive(const Field& u, Index n, int k)
{
    const GridFunction samples = nodal_interp(u, n, n);
    GridFunction out(n, n);
    for (const auto& t : multiscale_terms_recursive(n, k)) {
        GridFunction term = interp_x(interp_y(samples, t.ny), t.nx);
        term *= static_cast<double>(t.coeff);
        out += term;
    }
    return out;
}

Coeffs interior_coeffs(const GridFunction& g)
{
    if (g.nx() != g.ny()) {
        throw DimensionError("interior_coeffs: grid must be square");
    }
    const Index n = g.nx();
    Coeffs v;
    v.reserve(static_cast<std::size_t>((n - 1) * (n - 1)));
    for (Index j = 1; j <= n - 1; ++j) {
        for (Index i = 1; i <= n - 1; ++i) {
            v.push_back(g.at(i, j));
        }
    }
    return v;
}

double energy_norm(const SparseMatrix& a, std::span<const double> v)
{
    const Coeffs av = a.multiply(v);
    const double q = dot(v, av);
    if (q >= 0.0) {
        return std::sqrt(q);
    }
    const double vv = dot(v, v);
    if (-q <= 1e-14 * vv) {
        std::cerr << "warning: energy_norm clamped negative quadratic form " << q << " to zero\n";
        return 0.0;
    }
    throw DomainError("energy_norm: quadratic form v^T A v = " + std::to_string(q) + " is negative");
}

} // namespace sgfem

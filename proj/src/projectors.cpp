#include "sgfem/projectors.hpp"

#include "sgfem/error.hpp"
#include "sgfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sgfem {

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::classical:
        return "classical";
    case Method::two_scale:
        return "two-scale";
    case Method::multiscale:
        return "multiscale";
    case Method::hierarchical:
        return "hierarchical";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    if (name == "classical") {
        return Method::classical;
    }
    if (name == "two-scale" || name == "two_scale") {
        return Method::two_scale;
    }
    if (name == "multiscale") {
        return Method::multiscale;
    }
    if (name == "hierarchical") {
        return Method::hierarchical;
    }
    throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Ordering o) noexcept
{
    return o == Ordering::natural ? "natural" : "lex";
}

Ordering parse_ordering(std::string_view name)
{
    if (name == "natural") {
        return Ordering::natural;
    }
    if (name == "lex" || name == "lexicographic") {
        return Ordering::lexicographic;
    }
    throw ConfigError("unknown ordering '" + std::string(name) + "'");
}

std::optional<int> exact_log2(Index n) noexcept
{
    if (n < 1 || (n & (n - 1)) != 0) {
        return std::nullopt;
    }
    int l = 0;
    while ((Index{1} << l) < n) {
        ++l;
    }
    return l;
}

Index default_sigma(Index n)
{
    const auto s = static_cast<Index>(std::llround(std::cbrt(static_cast<double>(n))));
    if (s < 2 || n % s != 0 || s >= n) {
        throw ConfigError("default sigma = round(N^(1/3)) = " + std::to_string(s) + " is not a proper divisor of N = "
                          + std::to_string(n) + "; pass sigma explicitly");
    }
    return s;
}

int default_level(Index n)
{
    const auto l = exact_log2(n);
    if (!l || *l < 1) {
        throw ConfigError("multiscale level needs N a power of two >= 2, got " + std::to_string(n));
    }
    return *l - 1;
}

Index MethodConfig::resolved_sigma() const
{
    return sigma ? *sigma : default_sigma(n);
}

int MethodConfig::resolved_k() const
{
    if (method == Method::hierarchical) {
        return default_level(n);
    }
    return k ? *k : default_level(n);
}

void MethodConfig::validate() const
{
    if (n < 2) {
        throw ConfigError("N must be >= 2, got " + std::to_string(n));
    }
    switch (method) {
    case Method::classical:
        return;
    case Method::two_scale: {
        const Index s = resolved_sigma();
        if (s < 2 || s >= n) {
            throw ConfigError("two-scale needs 2 <= sigma < N, got sigma = " + std::to_string(s));
        }
        if (n % s != 0) {
            throw DivisibilityError("two-scale sigma = " + std::to_string(s) + " does not divide N = "
                                    + std::to_string(n));
        }
        return;
    }
    case Method::multiscale: {
        const auto l = exact_log2(n);
        if (!l) {
            throw ConfigError("multiscale needs N a power of two, got " + std::to_string(n));
        }
        const int kk = resolved_k();
        if (kk < 0 || kk > *l - 1) {
            throw ConfigError("multiscale level k = " + std::to_string(kk) + " outside 0.." + std::to_string(*l - 1));
        }
        return;
    }
    case Method::hierarchical: {
        const auto l = exact_log2(n);
        if (!l || *l < 2) {
            throw ConfigError("hierarchical basis needs N a power of two >= 4, got " + std::to_string(n));
        }
        return;
    }
    }
}

Index dof_count(const MethodConfig& config)
{
    config.validate();
    const Index n = config.n;
    switch (config.method) {
    case Method::classical:
        return (n - 1) * (n - 1);
    case Method::two_scale: {
        const Index s = config.resolved_sigma();
        return (s - 1) * (2 * n - s - 1);
    }
    case Method::multiscale:
    case Method::hierarchical: {
        // 2^-k (k/2 + 1) N^2 = (k + 2) N^2 / 2^(k+1); exact since 2^(k+1) <= N.
        const int k = config.resolved_k();
        return (k + 2) * ((n * n) >> (k + 1)) - 2 * n + 1;
    }
    }
    throw ConfigError("unknown method");
}

std::vector<LevelBlock> multiscale_blocks(Index n, int k)
{
    MethodConfig{Method::multiscale, n, std::nullopt, k}.validate();
    std::vector<LevelBlock> blocks;
    blocks.reserve(static_cast<std::size_t>(k) + 1);
    // Middle level: l = k/2 (even k, Nx = Ny) or l = (k+1)/2 (odd k, 2 Nx = Ny).
    const int middle = (k + 1) / 2;
    for (int l = 0; l <= k; ++l) {
        const Index nx = n >> l;
        const Index ny = n >> (k - l);
        if (l < middle) {
            blocks.push_back({nx, ny, 2, 1});
        } else if (l == middle) {
            blocks.push_back({nx, ny, 1, 1});
        } else {
            blocks.push_back({nx, ny, 1, 2});
        }
    }
    return blocks;
}

namespace {

// Interior coarse indices 1, 1+skip, ... as 0-based column numbers of prolongation_1d.
std::vector<Index> strided_columns(Index coarse, int skip)
{
    std::vector<Index> cols;
    for (Index i = 1; i <= coarse - 1; i += skip) {
        cols.push_back(i - 1);
    }
    return cols;
}

SparseMatrix prolongation_strided(Index fine, Index coarse, int skip)
{
    const SparseMatrix p = prolongation_1d(Mesh1D(fine), Mesh1D(coarse));
    if (skip == 1) {
        return p;
    }
    const auto cols = strided_columns(coarse, skip);
    return select_columns(p, cols);
}

} // namespace

SparseMatrix two_scale_projector(Index n, Index sigma)
{
    MethodConfig{Method::two_scale, n, sigma}.validate();
    const SparseMatrix p = prolongation_1d(Mesh1D(n), Mesh1D(sigma));

    // y index j (1-based) is dropped when the fine node y_j is a node of the sigma mesh.
    const Index stride = n / sigma;
    std::vector<Index> unique_rows;
    unique_rows.reserve(static_cast<std::size_t>(n - sigma));
    for (Index j = 1; j <= n - 1; ++j) {
        if (j % stride != 0) {
            unique_rows.push_back(j - 1);
        }
    }
    const SparseMatrix keep = select_columns(SparseMatrix::identity(n - 1), unique_rows);

    const SparseMatrix blocks[] = {kron(p, SparseMatrix::identity(n - 1)), kron(keep, p)};
    return hstack(blocks);
}

SparseMatrix multiscale_projector(Index n, int k)
{
    const auto levels = multiscale_blocks(n, k);
    std::vector<SparseMatrix> blocks;
    blocks.reserve(levels.size());
    for (const auto& b : levels) {
        blocks.push_back(kron(prolongation_strided(n, b.ny, b.skip_y), prolongation_strided(n, b.nx, b.skip_x)));
    }
    return hstack(blocks);
}

SparseMatrix hierarchical_projector(Index n)
{
    MethodConfig{Method::hierarchical, n}.validate();
    const int levels = *exact_log2(n);
    std::vector<SparseMatrix> blocks;
    for (int total = 2; total <= levels + 1; ++total) {
        for (int m = 1; m <= levels; ++m) {
            const int l = total - m;
            if (l < 1 || l > levels) {
                continue;
            }
            blocks.push_back(kron(prolongation_strided(n, Index{1} << l, 2), prolongation_strided(n, Index{1} << m, 2)));
        }
    }
    return hstack(blocks);
}

std::vector<Index> basis_centres(const SparseMatrix& p)
{
    const SparseMatrix cols = transpose(p);
    std::vector<Index> centres(static_cast<std::size_t>(p.cols()));
    for (Index c = 0; c < cols.rows(); ++c) {
        const auto rows = cols.row_cols(c);
        const auto vals = cols.row_values(c);
        if (rows.empty()) {
            throw DomainError("basis_centres: column " + std::to_string(c) + " is empty");
        }
        const auto best = std::max_element(vals.begin(), vals.end());
        centres[static_cast<std::size_t>(c)] = rows[static_cast<std::size_t>(best - vals.begin())];
    }
    return centres;
}

SparseMatrix to_lexicographic(const SparseMatrix& p)
{
    const auto centres = basis_centres(p);
    std::vector<Index> order(centres.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return centres[static_cast<std::size_t>(a)] < centres[static_cast<std::size_t>(b)];
    });
    return select_columns(p, order);
}

SparseMatrix build_projector(const MethodConfig& config)
{
    config.validate();
    SparseMatrix p;
    switch (config.method) {
    case Method::classical:
        p = SparseMatrix::identity((config.n - 1) * (config.n - 1));
        break;
    case Method::two_scale:
        p = two_scale_projector(config.n, config.resolved_sigma());
        break;
    case Method::multiscale:
        p = multiscale_projector(config.n, config.resolved_k());
        break;
    case Method::hierarchical:
        p = hierarchical_projector(config.n);
        break;
    }
    return config.ordering == Ordering::lexicographic ? to_lexicographic(p) : p;
}

} // namespace sgfem

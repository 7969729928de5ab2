#pragma once

#include "sgfem/sparse.hpp"
#include "sgfem/types.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace sgfem {

enum class Method { classical, two_scale, multiscale, hierarchical };

/// Column order of a projector. Natural concatenates the basis blocks in construction
/// order; lexicographic sorts columns by the fine node each basis function is centred on.
enum class Ordering { natural, lexicographic };

std::string_view to_string(Method m) noexcept;
/// Accepts "classical", "two-scale"/"two_scale", "multiscale", "hierarchical".
Method parse_method(std::string_view name);
std::string_view to_string(Ordering o) noexcept;
Ordering parse_ordering(std::string_view name);

struct MethodConfig {
    Method method = Method::classical;
    Index n = 2;
    std::optional<Index> sigma; ///< two-scale coarse interval count; default round(N^(1/3))
    std::optional<int> k;       ///< multiscale level; default log2(N) - 1
    Ordering ordering = Ordering::natural;

    /// Throws ConfigError when the combination is invalid.
    void validate() const;
    Index resolved_sigma() const;
    int resolved_k() const;
};

/// log2(n) if n is a positive power of two.
std::optional<int> exact_log2(Index n) noexcept;

/// round(cbrt(N)); throws ConfigError when that does not divide N or is below 2.
Index default_sigma(Index n);

/// log2(N) - 1; throws ConfigError when N is not a power of two >= 2.
int default_level(Index n);

/// Dimension of the trial space, from the closed forms:
/// classical (N-1)^2, two-scale (sigma-1)(2N-sigma-1),
/// multiscale 2^-k (k/2 + 1) N^2 - 2N + 1 (hierarchical: k = log2 N - 1).
Index dof_count(const MethodConfig& config);

/// One tensor block of the multiscale basis: hats of the Nx x Ny grid, keeping every
/// `skip_x`-th x index and every `skip_y`-th y index starting from 1.
struct LevelBlock {
    Index nx;
    Index ny;
    int skip_x;
    int skip_y;

    Index size() const noexcept { return ((nx - 1 + skip_x - 1) / skip_x) * ((ny - 1 + skip_y - 1) / skip_y); }
};

/// Blocks l = 0..k of the level-k multiscale basis. Grids with Nx > Ny keep odd x indices,
/// the middle grid (Nx = Ny, or 2 Nx = Ny for odd k) keeps everything, the rest keep odd y
/// indices.
std::vector<LevelBlock> multiscale_blocks(Index n, int k);

/// Fine-grid representation (N-1)^2 x (sigma-1)(2N-sigma-1) of the two-scale basis:
/// block 1 = {psi_i^N(x) psi_j^sigma(y)}, block 2 = {psi_i^sigma(x) psi_j^N(y)} with fine y
/// indices that are multiples of N/sigma left out (those functions are already in block 1).
SparseMatrix two_scale_projector(Index n, Index sigma);

/// Fine-grid representation of the level-k multiscale basis, blocks in level order.
SparseMatrix multiscale_projector(Index n, int k);

/// Fine-grid representation of the truncated hierarchical basis: W_{m,n} = odd-index hats of
/// the 2^m x 2^n grid for 1 <= m, n <= L, m + n <= L + 1, with N = 2^L, L >= 2. Subspaces are
/// ordered by m + n, then by m.
SparseMatrix hierarchical_projector(Index n);

/// Projector for any configuration (identity for classical), in the requested ordering.
SparseMatrix build_projector(const MethodConfig& config);

/// 0-based lexicographic fine index of the node where each column of P peaks.
std::vector<Index> basis_centres(const SparseMatrix& p);

/// Columns of P reordered by basis_centres.
SparseMatrix to_lexicographic(const SparseMatrix& p);

} // namespace sgfem

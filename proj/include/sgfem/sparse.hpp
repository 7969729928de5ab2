#pragma once

#include "sgfem/types.hpp"

#include <filesystem>
#include <span>
#include <vector>

namespace sgfem {

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Compressed sparse row matrix.
///
/// Invariants, enforced on construction: row_offsets has rows()+1 monotone entries ending at
/// nnz(); column indices are sorted and unique within each row; no stored value is exactly 0.0.
/// Explicit zeros passed to the constructor are purged, so nnz() always counts true nonzeros.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(Index rows, Index cols, std::vector<Index> row_offsets, std::vector<Index> col_indices,
                 std::vector<double> values);

    static SparseMatrix identity(Index n);
    /// Duplicates are summed; resulting zeros are purged.
    static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> entries);
    /// Row-major dense input; exact zeros are skipped.
    static SparseMatrix from_dense(Index rows, Index cols, std::span<const double> dense);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Index nnz() const noexcept { return static_cast<Index>(values_.size()); }

    std::span<const Index> row_offsets() const noexcept { return offsets_; }
    std::span<const Index> col_indices() const noexcept { return cols_idx_; }
    std::span<const double> values() const noexcept { return values_; }

    std::span<const Index> row_cols(Index r) const noexcept;
    std::span<const double> row_values(Index r) const noexcept;

    /// Entry (r, c), zero when not stored.
    double coeff(Index r, Index c) const;

    /// y = M x
    Coeffs multiply(std::span<const double> x) const;

    /// Row-major dense copy. Intended for small matrices in tests and diagnostics.
    std::vector<double> to_dense() const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Index> offsets_{0};
    std::vector<Index> cols_idx_;
    std::vector<double> values_;
};

/// Kronecker product; entry (i*B.rows + k, j*B.cols + l) = A(i,j) * B(k,l) (0-based).
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

SparseMatrix transpose(const SparseMatrix& m);

/// Sparse product A * B (row-wise Gustavson).
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// alpha * A + beta * B
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0, double beta = 1.0);

SparseMatrix scale(const SparseMatrix& m, double factor);

/// Galerkin product P^T A P, symmetrized as (M + M^T)/2 and zero-purged.
SparseMatrix triple_product(const SparseMatrix& p, const SparseMatrix& a);

/// Column concatenation (B_1 | B_2 | ...). All blocks must have the same row count.
SparseMatrix hstack(std::span<const SparseMatrix> blocks);

/// Matrix formed from the listed columns of M, in the listed order.
SparseMatrix select_columns(const SparseMatrix& m, std::span<const Index> columns);

/// Stored-entry count; exact zeros never survive construction.
inline Index nnz(const SparseMatrix& m) noexcept { return m.nnz(); }

/// Exact structural and numerical symmetry.
bool is_symmetric(const SparseMatrix& m);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Matrix Market coordinate/real/general format, 1-based indices.
void write_matrix_market(const SparseMatrix& m, const std::filesystem::path& path);

/// One "row col" pair per line, 1-based, for external spy plots.
void write_sparsity_pattern(const SparseMatrix& m, const std::filesystem::path& path);

} // namespace sgfem

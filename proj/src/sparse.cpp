#include "sgfem/sparse.hpp"

#include "sgfem/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

namespace sgfem {

namespace {

Index checked_mul(Index a, Index b, const char* what)
{
    Index out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw DimensionError(std::string(what) + ": index range overflows 64 bits");
    }
    return out;
}

// Scatter/gather accumulator for row-wise products: one dense slot per column plus a
// touched list, reset after each row.
class RowAccumulator {
public:
    explicit RowAccumulator(Index width)
        : sums_(static_cast<std::size_t>(width), 0.0), seen_(static_cast<std::size_t>(width), false) {}

    void add(Index col, double v)
    {
        const auto c = static_cast<std::size_t>(col);
        if (!seen_[c]) {
            seen_[c] = true;
            touched_.push_back(col);
        }
        sums_[c] += v;
    }

    void flush(std::vector<Index>& cols, std::vector<double>& vals)
    {
        std::sort(touched_.begin(), touched_.end());
        for (Index c : touched_) {
            const auto ci = static_cast<std::size_t>(c);
            if (sums_[ci] != 0.0) {
                cols.push_back(c);
                vals.push_back(sums_[ci]);
            }
            sums_[ci] = 0.0;
            seen_[ci] = false;
        }
        touched_.clear();
    }

private:
    std::vector<double> sums_;
    std::vector<bool> seen_;
    std::vector<Index> touched_;
};

} // namespace

SparseMatrix::SparseMatrix(Index rows, Index cols, std::vector<Index> row_offsets, std::vector<Index> col_indices,
                           std::vector<double> values)
    : rows_(rows), cols_(cols), offsets_(std::move(row_offsets)), cols_idx_(std::move(col_indices)),
      values_(std::move(values))
{
    if (rows < 0 || cols < 0) {
        throw DimensionError("SparseMatrix: negative shape");
    }
    if (offsets_.size() != static_cast<std::size_t>(rows) + 1 || offsets_.front() != 0) {
        throw DimensionError("SparseMatrix: row_offsets must have rows+1 entries starting at 0");
    }
    if (cols_idx_.size() != values_.size() || offsets_.back() != static_cast<Index>(values_.size())) {
        throw DimensionError("SparseMatrix: last row offset must equal the number of values");
    }
    bool has_zero = false;
    for (Index r = 0; r < rows; ++r) {
        const Index lo = offsets_[static_cast<std::size_t>(r)];
        const Index hi = offsets_[static_cast<std::size_t>(r) + 1];
        if (hi < lo) {
            throw DimensionError("SparseMatrix: row_offsets not monotone at row " + std::to_string(r));
        }
        for (Index p = lo; p < hi; ++p) {
            const Index c = cols_idx_[static_cast<std::size_t>(p)];
            if (c < 0 || c >= cols) {
                throw DimensionError("SparseMatrix: column index out of range in row " + std::to_string(r));
            }
            if (p > lo && c <= cols_idx_[static_cast<std::size_t>(p) - 1]) {
                throw DimensionError("SparseMatrix: column indices not sorted/unique in row " + std::to_string(r));
            }
            has_zero = has_zero || values_[static_cast<std::size_t>(p)] == 0.0;
        }
    }
    if (!has_zero) {
        return;
    }
    Index out = 0;
    Index lo = 0;
    for (Index r = 0; r < rows; ++r) {
        const Index hi = offsets_[static_cast<std::size_t>(r) + 1];
        for (Index p = lo; p < hi; ++p) {
            if (values_[static_cast<std::size_t>(p)] != 0.0) {
                cols_idx_[static_cast<std::size_t>(out)] = cols_idx_[static_cast<std::size_t>(p)];
                values_[static_cast<std::size_t>(out)] = values_[static_cast<std::size_t>(p)];
                ++out;
            }
        }
        lo = hi;
        offsets_[static_cast<std::size_t>(r) + 1] = out;
    }
    cols_idx_.resize(static_cast<std::size_t>(out));
    values_.resize(static_cast<std::size_t>(out));
}

SparseMatrix SparseMatrix::identity(Index n)
{
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1);
    std::iota(offsets.begin(), offsets.end(), Index{0});
    std::vector<Index> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), Index{0});
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> entries)
{
    for (const auto& t : entries) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
            throw DimensionError("SparseMatrix::from_triplets: entry out of range");
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Index> offsets(static_cast<std::size_t>(rows) + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> vals;
    col_idx.reserve(entries.size());
    vals.reserve(entries.size());
    std::size_t p = 0;
    for (Index r = 0; r < rows; ++r) {
        while (p < entries.size() && entries[p].row == r) {
            const Index c = entries[p].col;
            double sum = 0.0;
            while (p < entries.size() && entries[p].row == r && entries[p].col == c) {
                sum += entries[p].value;
                ++p;
            }
            col_idx.push_back(c);
            vals.push_back(sum);
        }
        offsets[static_cast<std::size_t>(r) + 1] = static_cast<Index>(col_idx.size());
    }
    return SparseMatrix(rows, cols, std::move(offsets), std::move(col_idx), std::move(vals));
}

SparseMatrix SparseMatrix::from_dense(Index rows, Index cols, std::span<const double> dense)
{
    if (dense.size() != static_cast<std::size_t>(checked_mul(rows, cols, "from_dense"))) {
        throw DimensionError("SparseMatrix::from_dense: size mismatch");
    }
    std::vector<Index> offsets(static_cast<std::size_t>(rows) + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> vals;
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            const double v = dense[static_cast<std::size_t>(r * cols + c)];
            if (v != 0.0) {
                col_idx.push_back(c);
                vals.push_back(v);
            }
        }
        offsets[static_cast<std::size_t>(r) + 1] = static_cast<Index>(col_idx.size());
    }
    return SparseMatrix(rows, cols, std::move(offsets), std::move(col_idx), std::move(vals));
}

std::span<const Index> SparseMatrix::row_cols(Index r) const noexcept
{
    const auto lo = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(r)]);
    const auto hi = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(r) + 1]);
    return std::span<const Index>(cols_idx_).subspan(lo, hi - lo);
}

std::span<const double> SparseMatrix::row_values(Index r) const noexcept
{
    const auto lo = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(r)]);
    const auto hi = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(r) + 1]);
    return std::span<const double>(values_).subspan(lo, hi - lo);
}

double SparseMatrix::coeff(Index r, Index c) const
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
        throw DimensionError("SparseMatrix::coeff: index out of range");
    }
    const auto cs = row_cols(r);
    const auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it == cs.end() || *it != c) {
        return 0.0;
    }
    return row_values(r)[static_cast<std::size_t>(it - cs.begin())];
}

Coeffs SparseMatrix::multiply(std::span<const double> x) const
{
    if (x.size() != static_cast<std::size_t>(cols_)) {
        throw DimensionError("SparseMatrix::multiply: vector length " + std::to_string(x.size())
                             + " does not match " + std::to_string(cols_) + " columns");
    }
    Coeffs y(static_cast<std::size_t>(rows_), 0.0);
    for (Index r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (Index p = offsets_[static_cast<std::size_t>(r)]; p < offsets_[static_cast<std::size_t>(r) + 1]; ++p) {
            s += values_[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(cols_idx_[static_cast<std::size_t>(p)])];
        }
        y[static_cast<std::size_t>(r)] = s;
    }
    return y;
}

std::vector<double> SparseMatrix::to_dense() const
{
    std::vector<double> d(static_cast<std::size_t>(checked_mul(rows_, cols_, "to_dense")), 0.0);
    for (Index r = 0; r < rows_; ++r) {
        const auto cs = row_cols(r);
        const auto vs = row_values(r);
        for (std::size_t q = 0; q < cs.size(); ++q) {
            d[static_cast<std::size_t>(r * cols_ + cs[q])] = vs[q];
        }
    }
    return d;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b)
{
    const Index rows = checked_mul(a.rows(), b.rows(), "kron");
    const Index cols = checked_mul(a.cols(), b.cols(), "kron");
    checked_mul(a.nnz(), b.nnz(), "kron");

    std::vector<Index> offsets(static_cast<std::size_t>(rows) + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> vals;
    col_idx.reserve(static_cast<std::size_t>(a.nnz() * b.nnz()));
    vals.reserve(static_cast<std::size_t>(a.nnz() * b.nnz()));
    Index r = 0;
    for (Index i = 0; i < a.rows(); ++i) {
        const auto acols = a.row_cols(i);
        const auto avals = a.row_values(i);
        for (Index k = 0; k < b.rows(); ++k) {
            const auto bcols = b.row_cols(k);
            const auto bvals = b.row_values(k);
            // Columns come out sorted: outer loop over A's sorted columns, inner over B's.
            for (std::size_t p = 0; p < acols.size(); ++p) {
                const Index base = acols[p] * b.cols();
                for (std::size_t q = 0; q < bcols.size(); ++q) {
                    col_idx.push_back(base + bcols[q]);
                    vals.push_back(avals[p] * bvals[q]);
                }
            }
            offsets[static_cast<std::size_t>(++r)] = static_cast<Index>(col_idx.size());
        }
    }
    return SparseMatrix(rows, cols, std::move(offsets), std::move(col_idx), std::move(vals));
}

SparseMatrix transpose(const SparseMatrix& m)
{
    std::vector<Index> offsets(static_cast<std::size_t>(m.cols()) + 1, 0);
    for (Index c : m.col_indices()) {
        ++offsets[static_cast<std::size_t>(c) + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<Index> next(offsets.begin(), offsets.end() - 1);
    std::vector<Index> col_idx(static_cast<std::size_t>(m.nnz()));
    std::vector<double> vals(static_cast<std::size_t>(m.nnz()));
    for (Index r = 0; r < m.rows(); ++r) {
        const auto cs = m.row_cols(r);
        const auto vs = m.row_values(r);
        for (std::size_t q = 0; q < cs.size(); ++q) {
            const auto dst = static_cast<std::size_t>(next[static_cast<std::size_t>(cs[q])]++);
            col_idx[dst] = r;
            vals[dst] = vs[q];
        }
    }
    return SparseMatrix(m.cols(), m.rows(), std::move(offsets), std::move(col_idx), std::move(vals));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: inner dimensions " + std::to_string(a.cols()) + " and "
                             + std::to_string(b.rows()) + " differ");
    }
    std::vector<Index> offsets(static_cast<std::size_t>(a.rows()) + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> vals;
    RowAccumulator acc(b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        const auto acols = a.row_cols(i);
        const auto avals = a.row_values(i);
        for (std::size_t p = 0; p < acols.size(); ++p) {
            const auto bcols = b.row_cols(acols[p]);
            const auto bvals = b.row_values(acols[p]);
            for (std::size_t q = 0; q < bcols.size(); ++q) {
                acc.add(bcols[q], avals[p] * bvals[q]);
            }
        }
        acc.flush(col_idx, vals);
        offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(col_idx.size());
    }
    return SparseMatrix(a.rows(), b.cols(), std::move(offsets), std::move(col_idx), std::move(vals));
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("add: shapes differ");
    }
    std::vector<Index> offsets(static_cast<std::size_t>(a.rows()) + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> vals;
    col_idx.reserve(static_cast<std::size_t>(std::max(a.nnz(), b.nnz())));
    vals.reserve(static_cast<std::size_t>(std::max(a.nnz(), b.nnz())));
    for (Index r = 0; r < a.rows(); ++r) {
        const auto ac = a.row_cols(r);
        const auto av = a.row_values(r);
        const auto bc = b.row_cols(r);
        const auto bv = b.row_values(r);
        std::size_t p = 0;
        std::size_t q = 0;
        while (p < ac.size() || q < bc.size()) {
            if (q == bc.size() || (p < ac.size() && ac[p] < bc[q])) {
                col_idx.push_back(ac[p]);
                vals.push_back(alpha * av[p++]);
            } else if (p == ac.size() || bc[q] < ac[p]) {
                col_idx.push_back(bc[q]);
                vals.push_back(beta * bv[q++]);
            } else {
                col_idx.push_back(ac[p]);
                vals.push_back(alpha * av[p++] + beta * bv[q++]);
            }
        }
        offsets[static_cast<std::size_t>(r) + 1] = static_cast<Index>(col_idx.size());
    }
    return SparseMatrix(a.rows(), a.cols(), std::move(offsets), std::move(col_idx), std::move(vals));
}

SparseMatrix scale(const SparseMatrix& m, double factor)
{
    std::vector<double> vals(m.values().begin(), m.values().end());
    for (double& v : vals) {
        v *= factor;
    }
    return SparseMatrix(m.rows(), m.cols(), {m.row_offsets().begin(), m.row_offsets().end()},
                        {m.col_indices().begin(), m.col_indices().end()}, std::move(vals));
}

SparseMatrix triple_product(const SparseMatrix& p, const SparseMatrix& a)
{
    if (a.rows() != a.cols()) {
        throw DimensionError("triple_product: A must be square");
    }
    if (p.rows() != a.rows()) {
        throw DimensionError("triple_product: P has " + std::to_string(p.rows()) + " rows but A has order "
                             + std::to_string(a.rows()));
    }
    const SparseMatrix galerkin = multiply(transpose(p), multiply(a, p));
    // 0.5*x + 0.5*y is commutative in floating point, so the result is exactly symmetric.
    return add(galerkin, transpose(galerkin), 0.5, 0.5);
}

SparseMatrix hstack(std::span<const SparseMatrix> blocks)
{
    if (blocks.empty()) {
        return {};
    }
    const Index rows = blocks.front().rows();
    Index cols = 0;
    Index total = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) {
            throw DimensionError("hstack: blocks have differing row counts");
        }
        cols += b.cols();
        total += b.nnz();
    }
    std::vector<Index> offsets(static_cast<std::size_t>(rows) + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> vals;
    col_idx.reserve(static_cast<std::size_t>(total));
    vals.reserve(static_cast<std::size_t>(total));
    for (Index r = 0; r < rows; ++r) {
        Index base = 0;
        for (const auto& b : blocks) {
            const auto cs = b.row_cols(r);
            const auto vs = b.row_values(r);
            for (std::size_t q = 0; q < cs.size(); ++q) {
                col_idx.push_back(base + cs[q]);
                vals.push_back(vs[q]);
            }
            base += b.cols();
        }
        offsets[static_cast<std::size_t>(r) + 1] = static_cast<Index>(col_idx.size());
    }
    return SparseMatrix(rows, cols, std::move(offsets), std::move(col_idx), std::move(vals));
}

SparseMatrix select_columns(const SparseMatrix& m, std::span<const Index> columns)
{
    // Map old column -> list of new positions (a column may be selected more than once).
    std::vector<std::vector<Index>> targets(static_cast<std::size_t>(m.cols()));
    for (std::size_t n = 0; n < columns.size(); ++n) {
        if (columns[n] < 0 || columns[n] >= m.cols()) {
            throw DimensionError("select_columns: column index out of range");
        }
        targets[static_cast<std::size_t>(columns[n])].push_back(static_cast<Index>(n));
    }
    std::vector<Triplet> entries;
    for (Index r = 0; r < m.rows(); ++r) {
        const auto cs = m.row_cols(r);
        const auto vs = m.row_values(r);
        for (std::size_t q = 0; q < cs.size(); ++q) {
            for (Index dst : targets[static_cast<std::size_t>(cs[q])]) {
                entries.push_back({r, dst, vs[q]});
            }
        }
    }
    return SparseMatrix::from_triplets(m.rows(), static_cast<Index>(columns.size()), std::move(entries));
}

bool is_symmetric(const SparseMatrix& m)
{
    return m.rows() == m.cols() && transpose(m) == m;
}

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw DimensionError("dot: length mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

void write_matrix_market(const SparseMatrix& m, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    char buf[64];
    for (Index r = 0; r < m.rows(); ++r) {
        const auto cs = m.row_cols(r);
        const auto vs = m.row_values(r);
        for (std::size_t q = 0; q < cs.size(); ++q) {
            std::snprintf(buf, sizeof buf, "%.17g", vs[q]);
            out << (r + 1) << ' ' << (cs[q] + 1) << ' ' << buf << '\n';
        }
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

void write_sparsity_pattern(const SparseMatrix& m, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c : m.row_cols(r)) {
            out << (r + 1) << ' ' << (c + 1) << '\n';
        }
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

} // namespace sgfem

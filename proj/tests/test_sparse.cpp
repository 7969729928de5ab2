#include "sgfem/error.hpp"
#include "sgfem/sparse.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace sgfem;

TEST_CASE("construction validates and purges explicit zeros")
{
    const SparseMatrix m(2, 3, {0, 2, 3}, {0, 2, 1}, {1.0, 0.0, 5.0});
    CHECK(m.nnz() == 2);
    CHECK(m.coeff(0, 0) == 1.0);
    CHECK(m.coeff(0, 2) == 0.0);
    CHECK(m.coeff(1, 1) == 5.0);
    CHECK(m.row_offsets().back() == m.nnz());
    for (double v : m.values()) {
        CHECK(v != 0.0);
    }

    CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1}, {0}, {1.0}), DimensionError);
    CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 2}, {1, 0}, {1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 2}, {1, 1}, {1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 1}, {2}, {1.0}), DimensionError);
}

TEST_CASE("from_triplets sums duplicates and drops cancellations")
{
    const auto m = SparseMatrix::from_triplets(2, 2, {{1, 1, 2.0}, {0, 1, 1.0}, {0, 1, -1.0}, {1, 1, 3.0}});
    CHECK(m.nnz() == 1);
    CHECK(m.coeff(1, 1) == 5.0);
}

TEST_CASE("nnz examples")
{
    CHECK(nnz(SparseMatrix::identity(5)) == 5);
    CHECK(nnz(SparseMatrix()) == 0);
}

TEST_CASE("kron examples")
{
    CHECK(kron(SparseMatrix::identity(2), SparseMatrix::identity(3)) == SparseMatrix::identity(6));

    const auto a = SparseMatrix::from_dense(1, 1, std::vector<double>{2.0});
    const auto b = SparseMatrix::from_dense(2, 2, std::vector<double>{1.0, 4.0, 4.0, 1.0});
    CHECK(kron(a, b).to_dense() == std::vector<double>{2.0, 8.0, 8.0, 2.0});

    // Block layout: entry (i*rB + k, j*cB + l) = A(i,j) B(k,l).
    const auto x = SparseMatrix::from_dense(2, 2, std::vector<double>{1.0, 2.0, 0.0, 3.0});
    const auto y = SparseMatrix::from_dense(1, 2, std::vector<double>{5.0, 7.0});
    const auto k = kron(x, y);
    CHECK(k.rows() == 2);
    CHECK(k.cols() == 4);
    CHECK(k.to_dense() == std::vector<double>{5.0, 7.0, 10.0, 14.0, 0.0, 0.0, 15.0, 21.0});

    const SparseMatrix huge(1, Index{1} << 33, {0, 0}, {}, {});
    CHECK_THROWS_AS(kron(huge, huge), DimensionError);
}

TEST_CASE("kron nnz is the product when nothing cancels, and products that underflow are purged")
{
    std::mt19937_64 rng(7);
    const auto a = oracle::random_sparse(rng, 5, 4, 0.4);
    const auto b = oracle::random_sparse(rng, 3, 6, 0.5);
    CHECK(nnz(kron(a, b)) == nnz(a) * nnz(b));

    const auto tiny = SparseMatrix::from_dense(1, 1, std::vector<double>{1e-200});
    CHECK(nnz(kron(tiny, tiny)) == 0);
}

TEST_CASE("kron is associative")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = oracle::random_sparse(rng, 3, 2, 0.6);
        const auto b = oracle::random_sparse(rng, 2, 4, 0.5);
        const auto c = oracle::random_sparse(rng, 3, 3, 0.5);
        const auto left = kron(kron(a, b), c);
        const auto right = kron(a, kron(b, c));
        REQUIRE(left.rows() == right.rows());
        CHECK(oracle::max_abs_diff(left.to_dense(), right.to_dense()) <= 1e-14);
    }
}

TEST_CASE("multiply, add and transpose agree with dense arithmetic")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_sparse(rng, 7, 5, 0.3);
        const auto b = oracle::random_sparse(rng, 5, 6, 0.3);
        const auto prod = oracle::matmul(oracle::dense_of(a), oracle::dense_of(b));
        CHECK(oracle::max_abs_diff(multiply(a, b).to_dense(), prod.a) <= 1e-14);
        CHECK(transpose(transpose(a)) == a);
        CHECK(oracle::dense_of(transpose(b)).a == oracle::transpose(oracle::dense_of(b)).a);

        const auto c = oracle::random_sparse(rng, 7, 5, 0.3);
        const auto sum = add(a, c, 2.0, -0.5).to_dense();
        const auto da = a.to_dense();
        const auto dc = c.to_dense();
        for (std::size_t i = 0; i < sum.size(); ++i) {
            CHECK(sum[i] == doctest::Approx(2.0 * da[i] - 0.5 * dc[i]).epsilon(1e-15));
        }
    }
    CHECK_THROWS_AS(multiply(SparseMatrix::identity(2), SparseMatrix::identity(3)), DimensionError);
    CHECK_THROWS_AS(add(SparseMatrix::identity(2), SparseMatrix::identity(3)), DimensionError);
}

TEST_CASE("add purges exact cancellation")
{
    const auto a = SparseMatrix::identity(3);
    CHECK(nnz(add(a, a, 1.0, -1.0)) == 0);
}

TEST_CASE("triple_product examples")
{
    std::mt19937_64 rng(5);
    auto r = oracle::random_sparse(rng, 6, 6, 0.4);
    // SPD test matrix R^T R + 6 I.
    const auto a = add(multiply(transpose(r), r), SparseMatrix::identity(6), 1.0, 6.0);

    CHECK(oracle::max_abs_diff(triple_product(SparseMatrix::identity(6), a).to_dense(), a.to_dense()) <= 1e-14);

    const auto e3 = SparseMatrix::from_triplets(6, 1, {{3, 0, 1.0}});
    const auto one = triple_product(e3, a);
    CHECK(one.rows() == 1);
    CHECK(one.coeff(0, 0) == a.coeff(3, 3));

    const auto p = oracle::random_sparse(rng, 6, 3, 0.5);
    const auto ptap = triple_product(p, a);
    CHECK(is_symmetric(ptap));
    const auto dp = oracle::dense_of(p);
    const auto dense = oracle::matmul(oracle::transpose(dp), oracle::matmul(oracle::dense_of(a), dp));
    CHECK(oracle::max_abs_diff(ptap.to_dense(), dense.a) <= 1e-12);

    CHECK_THROWS_AS(triple_product(p, oracle::random_sparse(rng, 6, 5, 0.5)), DimensionError);
    CHECK_THROWS_AS(triple_product(oracle::random_sparse(rng, 5, 2, 0.5), a), DimensionError);
}

TEST_CASE("hstack and select_columns")
{
    const auto a = SparseMatrix::from_dense(2, 1, std::vector<double>{1.0, 2.0});
    const auto b = SparseMatrix::from_dense(2, 2, std::vector<double>{0.0, 3.0, 4.0, 0.0});
    const SparseMatrix blocks[] = {a, b};
    const auto h = hstack(blocks);
    CHECK(h.to_dense() == std::vector<double>{1.0, 0.0, 3.0, 2.0, 4.0, 0.0});

    const std::vector<Index> cols{2, 0};
    CHECK(select_columns(h, cols).to_dense() == std::vector<double>{3.0, 1.0, 0.0, 2.0});

    const SparseMatrix bad[] = {a, SparseMatrix::identity(3)};
    CHECK_THROWS_AS(hstack(bad), DimensionError);
}

TEST_CASE("multiply(vector) checks length")
{
    const auto m = SparseMatrix::identity(3);
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK(m.multiply(x) == x);
    CHECK_THROWS_AS(m.multiply(std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("Matrix Market export uses 1-based coordinates")
{
    const auto path = std::filesystem::temp_directory_path() / "sgfem_test_export.mtx";
    const auto m = SparseMatrix::from_dense(2, 2, std::vector<double>{0.0, 0.25, -1.5, 0.0});
    write_matrix_market(m, path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 0.25\n2 1 -1.5\n");
    std::filesystem::remove(path);

    CHECK_THROWS_AS(write_matrix_market(m, "/nonexistent-dir/x.mtx"), IoError);
}

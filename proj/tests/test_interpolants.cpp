#include "sgfem/assembly.hpp"
#include "sgfem/error.hpp"
#include "sgfem/interpolants.hpp"
#include "sgfem/problems.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <numbers>
#include <random>

using namespace sgfem;

namespace {

const Field sine = [](double x, double y) { return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y); };

double max_diff(const GridFunction& a, const GridFunction& b)
{
    return (a - b).max_abs();
}

// Sampled fine-grid function, the argument of the partial operators.
GridFunction fine(const Field& u, Index n)
{
    return nodal_interp(u, n, n);
}

} // namespace

TEST_CASE("nodal interpolation examples")
{
    const auto zero = nodal_interp([](double, double) { return 0.0; }, 4, 3);
    CHECK(zero.max_abs() == 0.0);
    const auto xy = nodal_interp([](double x, double y) { return x * y; }, 2, 2);
    CHECK(xy.at(1, 1) == 0.25);
    CHECK(xy.values().size() == 9);

    // A function bilinear on the coarse grid survives refinement unchanged.
    const Field bil = [](double x, double y) { return (1.0 + 2.0 * x) * (3.0 - y); };
    CHECK(max_diff(refine(nodal_interp(bil, 1, 1), 8, 6), nodal_interp(bil, 8, 6)) <= 1e-14);
    const auto g = nodal_interp(sine, 4, 4);
    CHECK(refine(g, 4, 4).values().size() == g.values().size());
    CHECK(max_diff(refine(g, 4, 4), g) == 0.0);
    CHECK_THROWS_AS(refine(g, 6, 8), DivisibilityError);
    CHECK_THROWS_AS(interp_x(g, 3), DivisibilityError);
    CHECK_THROWS_AS(interp_y(g, 0), DivisibilityError);
    CHECK_THROWS_AS(two_scale_interp(sine, 16, 3), DivisibilityError);
}

TEST_CASE("two-scale interpolant reproduces coarse bilinears")
{
    const Index n = 27;
    const Index s = 3;
    GridFunction coarse(s, s);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (Index j = 1; j < s; ++j) {
        for (Index i = 1; i < s; ++i) {
            coarse.at(i, j) = g(rng);
        }
    }
    const GridFunction on_fine = refine(coarse, n, n);
    // Evaluate the coarse bilinear as a field through its fine-grid representation.
    const Field u = [&](double x, double y) {
        return on_fine.at(std::llround(x * n), std::llround(y * n));
    };
    CHECK(max_diff(two_scale_interp(u, n, s), on_fine) <= 1e-14);
}

TEST_CASE("two-scale error identity")
{
    const Index n = 27;
    const Index s = 3;
    const auto u = fine(sine, n);
    const GridFunction lhs = u - two_scale_interp(sine, n, s);
    const GridFunction dy = u - interp_y(u, s);
    const GridFunction rhs = dy - interp_x(dy, s);
    CHECK(max_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("partial operators commute and compose to the full interpolant")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = c(rng);
        const double b = c(rng);
        const double w = c(rng);
        const Field u = [=](double x, double y) { return std::exp(a * x) * std::cos(b * y + w * x * y); };
        const auto f = fine(u, 8);
        CHECK(max_diff(interp_x(interp_y(f, 4), 8), interp_y(interp_x(f, 8), 4)) == 0.0);
        const auto g = fine(u, 16);
        CHECK(max_diff(interp_x(interp_y(g, 4), 8), interp_y(interp_x(g, 8), 4)) <= 1e-15);
        CHECK(max_diff(interp_x(interp_y(g, 4), 8), refine(nodal_interp(u, 8, 4), 16, 16)) <= 1e-14);
    }
}

TEST_CASE("multiscale term lists")
{
    const auto one = multiscale_terms(8, 1);
    REQUIRE(one.size() == 3);
    CHECK(one[0] == CombinationTerm{8, 4, 1});
    CHECK(one[1] == CombinationTerm{4, 8, 1});
    CHECK(one[2] == CombinationTerm{4, 4, -1});
    CHECK(multiscale_terms(8, 0) == std::vector<CombinationTerm>{{8, 8, 1}});
    CHECK(multiscale_terms_recursive(8, 1) == std::vector<CombinationTerm>{{8, 4, 1}, {4, 8, 1}, {4, 4, -1}});
    CHECK_THROWS_AS(multiscale_terms(8, 3), ConfigError);

    // After combining like terms the recursion has exactly the closed-form terms.
    for (int k = 1; k <= 4; ++k) {
        auto explicit_terms = multiscale_terms(32, k);
        auto recursive_terms = multiscale_terms_recursive(32, k);
        const auto key = [](const CombinationTerm& t) { return std::tuple(t.nx, t.ny, t.coeff); };
        std::ranges::sort(explicit_terms, {}, key);
        std::ranges::sort(recursive_terms, {}, key);
        CHECK(explicit_terms == recursive_terms);
    }
}

TEST_CASE("recursive and explicit multiscale interpolants agree")
{
    CHECK(max_diff(multiscale_interp(sine, 32, 0), nodal_interp(sine, 32, 32)) == 0.0);
    for (int k = 1; k <= 4; ++k) {
        CAPTURE(k);
        CHECK(max_diff(multiscale_interp(sine, 32, k), multiscale_interp_recursive(sine, 32, k)) <= 1e-12);
    }
}

TEST_CASE("successive-level difference identity")
{
    const Index n = 32;
    const int k = 3;
    const auto u = fine(sine, n);
    const GridFunction lhs = multiscale_interp(sine, n, k - 1) - multiscale_interp(sine, n, k);
    GridFunction rhs(n, n);
    for (int i = 0; i <= k - 1; ++i) {
        const GridFunction dy = interp_y(u, n >> (k - 1 - i)) - interp_y(u, n >> (k - i));
        rhs += interp_x(dy, n >> i) - interp_x(dy, n >> (i + 1));
    }
    CHECK(max_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("energy norm examples")
{
    const auto a2 = system_2d(2);
    CHECK(energy_norm(a2, std::vector<double>{0.0}) == 0.0);
    CHECK(energy_norm(a2, std::vector<double>{1.0}) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));

    const auto a = system_2d(8);
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g;
    std::vector<double> v(49);
    for (double& x : v) {
        x = g(rng);
    }
    const double base = energy_norm(a, v);
    for (double alpha : {-3.0, 0.5, 7.25}) {
        std::vector<double> w(v);
        for (double& x : w) {
            x *= alpha;
        }
        CHECK(std::abs(energy_norm(a, w) - std::abs(alpha) * base) <= 1e-14 * std::abs(alpha) * base);
    }

    const auto indefinite = SparseMatrix::from_dense(1, 1, std::vector<double>{-1.0});
    CHECK_THROWS_AS(energy_norm(indefinite, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("interior coefficients follow the system ordering")
{
    const auto g = nodal_interp([](double x, double y) { return x + 10.0 * y; }, 4, 4);
    const auto v = interior_coeffs(g);
    REQUIRE(v.size() == 9);
    CHECK(v[static_cast<std::size_t>(lex_index(2, 1, 4))] == doctest::Approx(0.5 + 2.5));
    CHECK(v[static_cast<std::size_t>(lex_index(1, 3, 4))] == doctest::Approx(0.25 + 7.5));
    CHECK_THROWS_AS(interior_coeffs(GridFunction(4, 2)), DimensionError);
}

TEST_CASE("successive multiscale levels shrink by a factor between 2 and 8")
{
    const Index n = 256;
    const auto a = system_2d(n);
    std::vector<double> d;
    for (int k = 1; k <= 7; ++k) {
        d.push_back(energy_norm(a, interior_coeffs(multiscale_interp(sine, n, k) - multiscale_interp(sine, n, k - 1))));
    }
    for (std::size_t i = 1; i < d.size(); ++i) {
        CAPTURE(i);
        const double ratio = d[i] / d[i - 1];
        CHECK(ratio >= 2.0);
        CHECK(ratio <= 8.0);
    }
}

TEST_CASE("multiscale interpolation error halves with N")
{
    // |||u - w|||^2 = (f,u) - 2 (f,w) + |||w|||^2 for w in the fine FE space.
    const auto& p1 = find_problem("P1");
    std::vector<double> e;
    for (Index n : {32, 64, 128, 256}) {
        int k = 0;
        while ((Index{2} << k) < n) {
            ++k;
        }
        const auto v = interior_coeffs(multiscale_interp(sine, n, k));
        const auto b = rhs_2d(n, p1.f, gauss_legendre(6));
        const auto a = system_2d(n);
        e.push_back(std::sqrt(*p1.exact_fu - 2.0 * dot(b, v) + dot(v, a.multiply(v))));
    }
    for (std::size_t i = 1; i < e.size(); ++i) {
        CHECK(e[i - 1] / e[i] == doctest::Approx(2.0).epsilon(0.2));
    }
}

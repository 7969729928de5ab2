#include "sgfem/quadrature.hpp"

#include "sgfem/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace sgfem {

namespace {

// (P_n(t), P_n'(t)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double t)
{
    double p0 = 1.0;
    double p1 = t;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if (n == 1) {
        return {t, 1.0};
    }
    return {p1, n * (t * p1 - p0) / (t * t - 1.0)};
}

} // namespace

QuadratureRule gauss_legendre(int n)
{
    if (n < 1 || n > 64) {
        throw DomainError("gauss_legendre: point count must be in 1..64, got " + std::to_string(n));
    }
    QuadratureRule rule;
    rule.order = 2 * n - 1;
    rule.points.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = 2 * i + 1 == n ? 0.0 : std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100 && t != 0.0; ++iter) {
            const auto [p, dp] = legendre(n, t);
            const double step = p / dp;
            t -= step;
            if (std::abs(step) < 1e-17) {
                break;
            }
        }
        const double dp = legendre(n, t).second;
        const double w = 1.0 / ((1.0 - t * t) * dp * dp); // half the [-1,1] weight
        rule.points[static_cast<std::size_t>(i)] = {w, 0.5 * (1.0 - t)};
        rule.points[static_cast<std::size_t>(n - 1 - i)] = {w, 0.5 * (1.0 + t)};
    }
    return rule;
}

} // namespace sgfem

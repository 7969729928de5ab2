#include "sgfem/problems.hpp"

#include "sgfem/error.hpp"

#include <cmath>
#include <numbers>

namespace sgfem {

namespace {

using std::numbers::pi;

Problem sine_problem()
{
    Problem p;
    p.name = "P1";
    p.description = "u = sin(pi x) sin(pi y)";
    p.exact_u = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    p.exact_grad = [](double x, double y) {
        return std::array<double, 2>{pi * std::cos(pi * x) * std::sin(pi * y), pi * std::sin(pi * x) * std::cos(pi * y)};
    };
    p.f = [](double x, double y) { return (2.0 * pi * pi + 1.0) * std::sin(pi * x) * std::sin(pi * y); };
    // (f, u) = (2 pi^2 + 1) * ||u||^2 with ||u||^2 = 1/4.
    p.exact_fu = (2.0 * pi * pi + 1.0) / 4.0;
    return p;
}

Problem polynomial_problem()
{
    Problem p;
    p.name = "P2";
    p.description = "u = x(1-x) y(1-y)";
    p.exact_u = [](double x, double y) { return x * (1.0 - x) * y * (1.0 - y); };
    p.exact_grad = [](double x, double y) {
        return std::array<double, 2>{(1.0 - 2.0 * x) * y * (1.0 - y), x * (1.0 - x) * (1.0 - 2.0 * y)};
    };
    p.f = [](double x, double y) {
        const double gx = x * (1.0 - x);
        const double gy = y * (1.0 - y);
        return 2.0 * gy + 2.0 * gx + gx * gy;
    };
    // With a = int x(1-x) = 1/6 and b = int x^2(1-x)^2 = 1/30: (f, u) = 4ab + b^2 = 7/300.
    p.exact_fu = 7.0 / 300.0;
    return p;
}

Problem constant_load_problem()
{
    Problem p;
    p.name = "P3";
    p.description = "f = 1 (no closed-form u; reference energy from a refined classical solve)";
    p.f = [](double, double) { return 1.0; };
    return p;
}

} // namespace

const std::vector<Problem>& catalog()
{
    static const std::vector<Problem> problems{sine_problem(), polynomial_problem(), constant_load_problem()};
    return problems;
}

const Problem& find_problem(std::string_view name)
{
    std::string names;
    for (const auto& p : catalog()) {
        if (p.name == name) {
            return p;
        }
        names += names.empty() ? p.name : ", " + p.name;
    }
    throw ConfigError("unknown problem '" + std::string(name) + "' (available: " + names + ")");
}

} // namespace sgfem

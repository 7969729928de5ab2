#pragma once

#include "sgfem/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sgfem {

using GradientField = std::function<std::array<double, 2>(double x, double y)>;

/// Manufactured test case for -Lap u + u = f on the unit square with u = 0 on the boundary.
struct Problem {
    std::string name;
    std::string description;
    Field f;
    std::optional<Field> exact_u;
    std::optional<GradientField> exact_grad;
    /// (f, u) = |||u|||^2, the reference energy for the error identity.
    std::optional<double> exact_fu;
};

/// P1: u = sin(pi x) sin(pi y);  P2: u = x(1-x) y(1-y);  P3: f = 1, u unknown.
const std::vector<Problem>& catalog();

/// Looks a problem up by name (case-sensitive, e.g. "P1"); throws ConfigError listing the
/// available names otherwise.
const Problem& find_problem(std::string_view name);

} // namespace sgfem

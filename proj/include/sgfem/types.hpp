#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sgfem {

/// Row/column index type; 64-bit so the N = 4096 classical system (16.7M rows) fits comfortably.
using Index = std::int64_t;

/// Coefficients of a finite element function in some stated basis ordering.
using Coeffs = std::vector<double>;

/// Scalar field on the unit square.
using Field = std::function<double(double x, double y)>;

} // namespace sgfem

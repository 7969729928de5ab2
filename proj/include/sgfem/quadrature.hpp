#pragma once

#include <vector>

namespace sgfem {

struct QuadraturePoint {
    double weight;
    double abscissa;
};

/// Rule on the reference interval [0,1]; weights sum to one.
struct QuadratureRule {
    std::vector<QuadraturePoint> points;
    int order = 0; ///< highest polynomial degree integrated exactly
};

/// n-point Gauss-Legendre rule mapped to [0,1], exact to degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// The default load-vector rule: two Gauss points per direction, exact for cubics.
inline QuadratureRule two_point_gauss() { return gauss_legendre(2); }

} // namespace sgfem

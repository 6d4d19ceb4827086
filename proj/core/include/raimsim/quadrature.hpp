#pragma once

#include <vector>

namespace raimsim {

struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
QuadratureRule gauss_legendre(int order);

// Gauss-Hermite for weight exp(-x^2). With scaled = true the returned
// weights are w_i exp(x_i^2), evaluated without overflow so that integrands
// already containing their Gaussian can be summed directly.
QuadratureRule gauss_hermite(int order, bool scaled = false);

} // namespace raimsim

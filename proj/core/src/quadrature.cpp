#include "raimsim/quadrature.hpp"
#include "raimsim/error.hpp"
#include "raimsim/linalg.hpp"

#include <cmath>
#include <numbers>

namespace raimsim {

namespace {

// Golub-Welsch nodes: eigenvalues of the symmetric Jacobi matrix
std::vector<double> jacobi_nodes(int n, double (*offdiag)(int))
{
    MatrixXd j = MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k)
        j(k, k - 1) = j(k - 1, k) = offdiag(k);
    auto es = eigh(j, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

double legendre_off(int k) { return k / std::sqrt(4.0 * k * k - 1.0); }
double hermite_off(int k) { return std::sqrt(0.5 * k); }

} // namespace

QuadratureRule gauss_legendre(int order)
{
    if (order < 1)
        throw DomainError("quadrature order must be positive");
    QuadratureRule q;
    q.x = jacobi_nodes(order, legendre_off);
    q.w.resize(order);
    for (int i = 0; i < order; ++i) {
        // Newton polish on P_n and Christoffel weight 1 / sum p_k^2 (orthonormal p_k)
        double x = q.x[i];
        for (int it = 0; it < 3; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = order == 1 ? x : p1;
            double pnm1 = order == 1 ? 1.0 : p0;
            double dp = order * (x * pn - pnm1) / (x * x - 1.0);
            x -= pn / dp;
        }
        q.x[i] = x;
        double s = 0.0, p0 = 1.0, p1 = x;
        s += 0.5 * p0 * p0;
        for (int k = 1; k < order; ++k) {
            s += (2.0 * k + 1.0) / 2.0 * p1 * p1;
            double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        q.w[i] = 1.0 / s;
    }
    return q;
}

QuadratureRule gauss_hermite(int order, bool scaled)
{
    if (order < 1)
        throw DomainError("quadrature order must be positive");
    QuadratureRule q;
    q.x = jacobi_nodes(order, hermite_off);
    q.w.resize(order);
    const double pi_m14 = std::pow(std::numbers::pi, -0.25);
    for (int i = 0; i < order; ++i) {
        double x = q.x[i];
        // Newton polish on the orthonormal Hermite polynomial p_n, p_n' = sqrt(2n) p_{n-1}
        for (int it = 0; it < 3; ++it) {
            double h0 = pi_m14, h1 = std::sqrt(2.0) * x * pi_m14;
            if (order == 1)
                break;
            for (int k = 1; k < order; ++k) {
                double h2 = std::sqrt(2.0 / (k + 1)) * x * h1 - std::sqrt(static_cast<double>(k) / (k + 1)) * h0;
                h0 = h1;
                h1 = h2;
            }
            double deriv = std::sqrt(2.0 * order) * h0;
            x -= h1 / deriv;
        }
        q.x[i] = x;
        // Christoffel weight from the orthonormal Hermite functions, which carry exp(-x^2/2)
        const double g = std::exp(-0.5 * x * x);
        double h0 = pi_m14 * g, h1 = std::sqrt(2.0) * x * pi_m14 * g;
        double s = h0 * h0;
        for (int k = 1; k < order; ++k) {
            s += h1 * h1;
            double h2 = std::sqrt(2.0 / (k + 1)) * x * h1 - std::sqrt(static_cast<double>(k) / (k + 1)) * h0;
            h0 = h1;
            h1 = h2;
        }
        double w_scaled = 1.0 / s;
        q.w[i] = scaled ? w_scaled : w_scaled * std::exp(-x * x);
    }
    return q;
}

} // namespace raimsim

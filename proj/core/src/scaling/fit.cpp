#include "raimsim/error.hpp"
#include "raimsim/scaling.hpp"

#include <cmath>

namespace raimsim {

double PowerLawFit::operator()(double x) const { return prefactor * std::pow(x, exponent); }

PowerLawFit fit_power_law(const std::vector<double>& n, const std::vector<double>& y)
{
    if (n.size() != y.size())
        throw DomainError("fit_power_law: sample arrays differ in length");
    if (n.size() < 3)
        throw DomainError("fit_power_law needs at least 3 samples");
    const std::size_t m = n.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(n[i] > 0.0) || !(y[i] > 0.0))
            throw DomainError("fit_power_law: samples must be positive");
        const double lx = std::log(n[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = m * sxx - sx * sx;
    if (!(std::abs(den) > 0.0))
        throw DomainError("fit_power_law: all n are equal");
    PowerLawFit f;
    f.exponent = (m * sxy - sx * sy) / den;
    const double loga = (sy - f.exponent * sx) / m;
    f.prefactor = std::exp(loga);
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = std::log(y[i]) - loga - f.exponent * std::log(n[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / m);
    f.n = n;
    f.y = y;
    return f;
}

} // namespace raimsim

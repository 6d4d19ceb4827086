#include <cmath>
#include <memory>

#include "raimsim/error.hpp"
#include "raimsim/scaling.hpp"

namespace raimsim {

ScalingSample scaling_sample(int n, const QuantumDefectTable& defects, double mu_amu, const LocateOptions& opt,
                             const MomentOptions& mopt)
{
    auto basis = std::make_shared<BasisSet>(build_basis(n, std::vector<int>{-3, 1, 5}, defects));
    MultipoleOperator op(basis, 6, {}, opt.workers);
    ScalingSample s;
    s.n = n;
    s.well = locate_well(op, std::to_string(n) + "P1/2", mu_amu, opt);
    s.moments = transition_moments(op, s.well, mopt);
    return s;
}

ScalingFits fit_scaling(const std::vector<ScalingSample>& samples)
{
    if (samples.size() < 2)
        throw ConfigError("scaling fits need at least two principal quantum numbers");
    std::vector<double> n, d, de, z, rho, om;
    for (const auto& s : samples) {
        n.push_back(s.n);
        d.push_back(s.well.d_bohr);
        de.push_back(s.moments.delta_e);
        z.push_back(s.moments.z);
        rho.push_back(s.moments.rho);
        om.push_back(s.well.omega);
    }
    ScalingFits f;
    f.d = fit_power_law(n, d);
    f.delta_e = fit_power_law(n, de);
    f.z = fit_power_law(n, z);
    f.rho = fit_power_law(n, rho);
    f.omega_m = fit_power_law(n, om);
    return f;
}

double prefactor_at(const PowerLawFit& fit, double exponent)
{
    if (fit.n.empty())
        throw ConfigError("empty power-law fit");
    double acc = 0.0;
    for (std::size_t i = 0; i < fit.n.size(); ++i)
        acc += std::log(fit.y[i]) - exponent * std::log(fit.n[i]);
    return std::exp(acc / static_cast<double>(fit.n.size()));
}

} // namespace raimsim

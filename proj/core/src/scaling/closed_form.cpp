#include "raimsim/error.hpp"
#include "raimsim/scaling.hpp"
#include "raimsim/units.hpp"

#include <cmath>

namespace raimsim {

ScalingConstants ScalingConstants::reference() { return {}; }

ScalingConstants ScalingConstants::from_fits(const PowerLawFit& de, const PowerLawFit& d, const PowerLawFit& z,
                                             const PowerLawFit& rho)
{
    ScalingConstants c;
    c.de_c = de.prefactor;
    c.de_p = -de.exponent;
    c.g_rad_c = 0.5 * d.prefactor * z.prefactor;
    c.g_rad_p = d.exponent + z.exponent;
    c.g_ax_c = 0.25 * rho.prefactor;
    c.g_ax_p = rho.exponent;
    return c;
}

namespace {
void require_positive(double x, const char* what)
{
    if (!(x > 0.0))
        throw DomainError(std::string(what) + " must be positive");
}
} // namespace

double drive_strength(double q, double omega_rf, double ion_mass)
{
    require_positive(q, "q");
    require_positive(omega_rf, "drive frequency");
    require_positive(ion_mass, "ion mass");
    return ion_mass * q * omega_rf * omega_rf;
}

double delta_e(double n, const ScalingConstants& c)
{
    require_positive(n, "n");
    return c.de_c / std::pow(n, c.de_p);
}

double coupling(double n, double q, double omega_rf, double ion_mass, TrapAxis axis, const ScalingConstants& c)
{
    require_positive(n, "n");
    const double x = drive_strength(q, omega_rf, ion_mass);
    return axis == TrapAxis::Radial ? c.g_rad_c * x * std::pow(n, c.g_rad_p) : c.g_ax_c * x * std::pow(n, c.g_ax_p);
}

double chi(double n, double q, double omega_rf, double ion_mass, TrapAxis axis, const ScalingConstants& c)
{
    return coupling(n, q, omega_rf, ion_mass, axis, c) / delta_e(n, c);
}

double n_crit(double q, double omega_rf, double ion_mass, TrapAxis axis, const ScalingConstants& c)
{
    const double x = drive_strength(q, omega_rf, ion_mass);
    const double gc = axis == TrapAxis::Radial ? c.g_rad_c : c.g_ax_c;
    const double gp = axis == TrapAxis::Radial ? c.g_rad_p : c.g_ax_p;
    return std::pow(c.de_c / (gc * x), 1.0 / (gp + c.de_p));
}

double photon_number(double n, double omega_rf, const ScalingConstants& c)
{
    require_positive(omega_rf, "drive frequency");
    return delta_e(n, c) / omega_rf;
}

double single_photon_boundary(double omega_rf, double n_ph, const ScalingConstants& c)
{
    require_positive(omega_rf, "drive frequency");
    require_positive(n_ph, "photon number");
    return std::pow(c.de_c / (n_ph * omega_rf), 1.0 / c.de_p);
}

std::vector<CritMapRow> crit_map(double q, double ion_mass_amu, double f_lo_mhz, double f_hi_mhz, int points,
                                 const ScalingConstants& c)
{
    if (!(f_lo_mhz > 0.0) || !(f_hi_mhz > f_lo_mhz))
        throw ConfigError("crit-map frequency range must satisfy 0 < lo < hi");
    if (points < 2)
        throw ConfigError("crit-map needs at least 2 frequencies");
    const double m = units::amu_to_au(ion_mass_amu);
    std::vector<CritMapRow> rows;
    for (int i = 0; i < points; ++i) {
        const double f = f_lo_mhz * std::pow(f_hi_mhz / f_lo_mhz, static_cast<double>(i) / (points - 1));
        const double w = units::mhz_to_angular(f);
        rows.push_back({f, n_crit(q, w, m, TrapAxis::Radial, c), n_crit(q, w, m, TrapAxis::Axial, c),
                        single_photon_boundary(w, 1.0, c)});
    }
    return rows;
}

} // namespace raimsim

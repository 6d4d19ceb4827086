#pragma once

#include <string>
#include <vector>

#include "raimsim/floquet.hpp"
#include "raimsim/starkmap.hpp"

namespace raimsim {

// y = prefactor * n^exponent, fitted by least squares in log-log space.
struct PowerLawFit {
    double prefactor = 0.0;
    double exponent = 0.0;
    double residual = 0.0;   // RMS of log(y) - log(A n^p)
    std::vector<double> n;
    std::vector<double> y;

    double operator()(double x) const;
};

PowerLawFit fit_power_law(const std::vector<double>& n, const std::vector<double>& y);

struct MomentOptions {
    // states whose coupling is below this fraction of the strongest one are not "coupled"
    double coupling_fraction = 0.1;
    // a second state within pair_fraction * Delta E of K forms a near-degenerate pair with it
    double pair_fraction = 0.5;
    // the nearest axial level is skipped when its rho is below this fraction of the largest;
    // the next level and its closest partner in the other m_j sector are then combined
    double rho_fraction = 0.1;
};

// Couplings of the well state at r_ci = d (atomic units).
struct TransitionMoments {
    double delta_e = 0.0;   // |E_K - E_RAIM|
    double z = 0.0;         // sqrt(z1^2 + z2^2)
    double z1 = 0.0, z2 = 0.0;
    int k_rank = -1, pair_rank = -1;   // m_j = 1/2 sector ranks
    bool has_rho = false;   // needs the m_j = -3/2 and 5/2 sectors
    double rho = 0.0;       // sqrt(rho1^2 + rho2^2), <y^2 - x^2>
    double rho1 = 0.0, rho2 = 0.0;
};

TransitionMoments transition_moments(const MultipoleOperator& op, const WellDescriptor& well,
                                     const MomentOptions& opt = {});

// Power-law constants in atomic units:
//   Delta E = de_c / n^de_p, g_rad = g_rad_c x n^g_rad_p, g_ax = g_ax_c x n^g_ax_p, x = m_i q Omega^2
struct ScalingConstants {
    double de_c = 0.28, de_p = 4.0;
    double g_rad_c = 0.55, g_rad_p = 4.5;
    double g_ax_c = 1.2, g_ax_p = 2.6;

    static ScalingConstants reference();
    // g_rad = (x/4) 2 d z and g_ax = (x/4) rho from fitted d(n), z(n), rho(n) and Delta E(n)
    static ScalingConstants from_fits(const PowerLawFit& delta_e, const PowerLawFit& d, const PowerLawFit& z,
                                      const PowerLawFit& rho);
};

double drive_strength(double q, double omega_rf, double ion_mass);   // m_i q Omega^2
double delta_e(double n, const ScalingConstants& c = ScalingConstants::reference());
double coupling(double n, double q, double omega_rf, double ion_mass, TrapAxis axis,
                const ScalingConstants& c = ScalingConstants::reference());
double chi(double n, double q, double omega_rf, double ion_mass, TrapAxis axis,
           const ScalingConstants& c = ScalingConstants::reference());
// n at which chi = 1
double n_crit(double q, double omega_rf, double ion_mass, TrapAxis axis,
              const ScalingConstants& c = ScalingConstants::reference());

double photon_number(double n, double omega_rf, const ScalingConstants& c = ScalingConstants::reference());
// n at which Delta E(n) = n_ph Omega_rf
double single_photon_boundary(double omega_rf, double n_ph = 1.0,
                              const ScalingConstants& c = ScalingConstants::reference());

// Well geometry and couplings of the nP1/2 well at one n (m_j = -3/2, 1/2, 5/2 basis).
struct ScalingSample {
    int n = 0;
    WellDescriptor well;
    TransitionMoments moments;
};

ScalingSample scaling_sample(int n, const QuantumDefectTable& defects, double mu_amu, const LocateOptions& opt = {},
                             const MomentOptions& mopt = {});

// Power-law fits of a set of samples (atomic units).
struct ScalingFits {
    PowerLawFit d, delta_e, z, rho, omega_m;
};

ScalingFits fit_scaling(const std::vector<ScalingSample>& samples);

// Best prefactor of y = A n^p at a fixed exponent (geometric mean of y / n^p).
double prefactor_at(const PowerLawFit& fit, double exponent);

struct CritMapRow {
    double omega_rf_mhz = 0.0;
    double n_crit_rad = 0.0;
    double n_crit_ax = 0.0;
    double n_single_photon = 0.0;
};

// Log-spaced grid of drive frequencies (MHz, ordinary frequency).
std::vector<CritMapRow> crit_map(double q, double ion_mass_amu, double f_lo_mhz, double f_hi_mhz, int points,
                                 const ScalingConstants& c = ScalingConstants::reference());

} // namespace raimsim

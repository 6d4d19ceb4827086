#pragma once

#include <string>
#include <vector>

#include "raimsim/linalg.hpp"
#include "raimsim/starkmap.hpp"

namespace raimsim {

enum class Waveform { Sinusoidal, Digital };
enum class TrapAxis { Radial, Axial };

// Paul-trap drive H_P(t) = c V w(t) with c = m_i q Omega^2 / 4 (atomic units).
struct TrapDrive {
    double q = 0.1;
    double omega_rf = 0.0;   // angular frequency, atomic units
    Waveform waveform = Waveform::Sinusoidal;
    TrapAxis axis = TrapAxis::Radial;
    double ion_mass = 0.0;   // electron masses
    int steps = 8000;        // Trotter steps per period
    double t0 = 0.0;         // time origin of the waveform

    double period() const;
    double amplitude() const;
    // cos(Omega (t + t0)) or its sign for the digital drive
    double waveform_at(double t) const;
};

TrapDrive make_drive(double q, double f_rf_mhz, Waveform w, TrapAxis axis, double ion_mass_amu, int steps);

Waveform parse_waveform(const std::string& s);
TrapAxis parse_axis(const std::string& s);

// m_j sectors a drive orientation needs; ConfigError lists missing ones.
void check_sectors(const BasisSet& basis, TrapAxis axis);

// Amplitude matrix V over the whole basis at r_ci (Bohr):
//   radial: y^2 - z^2 + 2 r_ci z = 2 r_ci r C^1_0 - r^2 C^2_0 - r^2 (C^2_2 + C^2_-2)/sqrt(6)
//   axial:  y^2 - x^2 = -sqrt(2/3) r^2 (C^2_2 + C^2_-2)
// Sector-changing terms appear only between sectors present in the basis.
MatrixXd paul_operator(const MultipoleOperator& op, TrapAxis axis, double r_ci);

// V(r_ci) = 2 r_ci dipole + quadratic + cos2phi
struct PaulParts {
    MatrixXd dipole;      // z (r_ci-independent factor of the linear term)
    MatrixXd quadratic;   // -z^2 + r^2 sin^2(theta) / 2, within sectors
    MatrixXd cos2phi;     // Delta m_j = +-2 part
    MatrixXd at(double r_ci) const;
};
PaulParts paul_parts(const MultipoleOperator& op, TrapAxis axis);

struct PropagatorOptions {
    int chebyshev_max = 64;          // highest interpolation order tried
    double chebyshev_tol = 1e-12;    // max entry error of interpolated step unitaries
    bool use_symmetry = true;        // F0 = P^T P for palindromic step sequences
};

struct PropagatorStats {
    int distinct_steps = 0;
    int chebyshev_order = 0;         // 0 when step unitaries were computed directly
    double chebyshev_error = 0.0;
    bool symmetric = false;
};

// First-order Trotter product of exact step exponentials with midpoint sampling.
// h and v are real symmetric in any common basis.
MatrixXcd floquet_propagator(const MatrixXd& h, const MatrixXd& v, const TrapDrive& drive,
                             const PropagatorOptions& opt = {}, PropagatorStats* stats = nullptr);

// Reference implementation: one exponential per step, multiplied in order.
MatrixXcd floquet_propagator_direct(const MatrixXd& h, const MatrixXd& v, const TrapDrive& drive);

struct QuasiSpectrum {
    VectorXd quasienergies;   // folded into (-Omega/2, Omega/2]
    MatrixXcd modes;          // orthonormal columns
    double modulus_defect = 0.0;
};

// Raises NumericalError when an eigenvalue modulus deviates from 1 by more than tol.
QuasiSpectrum quasienergy_spectrum(const MatrixXcd& f0, double period, double tol = 1e-9);

// x folded into (-omega/2, omega/2]
double fold_quasienergy(double x, double omega);

struct RaimIdentification {
    int index = -1;
    double overlap = 0.0;
    double e_flo = 0.0;   // <phi|H|phi>
    bool ambiguous = false;
};

RaimIdentification identify_raim_state(const MatrixXcd& modes, const VectorXcd& psi, const MatrixXd& h,
                                       double ambiguous_below = 0.25);

// Adiabatic rank of the state dominated by `label` far outside the well region.
int raim_rank(const MultipoleOperator& op, const std::string& label, const Environment& env = {});

struct FloquetScanOptions {
    std::string label;                   // well state, e.g. "22P1/2"
    double energy_window_ghz = 1000.0;   // keep H_TI eigenstates within +- window of the RAIM (<= 0: all)
    PropagatorOptions propagator;
    // spike detection
    double overlap_threshold = 0.5;
    double spike_factor = 5.0;
    double spike_floor_mhz = 0.1;
    int median_half_window = 10;
    // gap refinement and Landau-Zener shading
    bool refine_gaps = true;
    int gap_search_steps = 5;
    int golden_iterations = 16;
    double well_omega = 0.0;             // atomic units; 0 disables P_LZ
    double well_mu = 0.0;                // electron masses
    unsigned workers = 0;
};

struct FloquetPoint {
    double r_nm = 0.0;
    double e_raim_ghz = 0.0;     // static well-state energy relative to the reference level
    double e_flo_ghz = 0.0;
    double overlap = 0.0;
    int dimension = 0;
    bool ambiguous = false;
    double unitarity = 0.0;
    double quasienergy_ghz = 0.0;  // of the identified mode, relative to the reference level, folded
};

struct CrossingRecord {
    std::size_t index = 0;       // grid index of the spike
    double r_nm = 0.0;
    double gap_mhz = 0.0;        // 2g
    double slope = 0.0;          // |d Delta E / d r_ci|, Hartree / Bohr
    double p_lz = -1.0;          // -1 when not evaluated
    int partner_rank = -1;
};

struct FloquetScanResult {
    std::vector<FloquetPoint> points;
    std::vector<bool> is_crossing;
    std::vector<CrossingRecord> crossings;
    double max_unitarity_defect = 0.0;
    int rank = -1;
};

// Floquet analysis at a single r_ci (nm); optionally returns the partner mode
// rank (second-largest overlap) and the folded quasienergy gap to it.
struct FloquetPointDetail {
    FloquetPoint point;
    double partner_gap = 0.0;    // Hartree
    int partner_sector = -1;     // sector and adiabatic rank dominating the partner mode
    int partner_rank = -1;
};
FloquetPointDetail floquet_point(const MultipoleOperator& op, const PaulParts& paul, const TrapDrive& drive,
                                 int rank, double r_nm, const FloquetScanOptions& opt);

FloquetScanResult scan_eflo(const MultipoleOperator& op, const TrapDrive& drive, const std::vector<double>& r_nm,
                            const FloquetScanOptions& opt);

// Spike flags from E_flo - E_RAIM deviations and overlaps (pure post-pass).
std::vector<bool> detect_spikes(const std::vector<FloquetPoint>& pts, const FloquetScanOptions& opt);

// Landau-Zener probability exp(-2 pi Gamma), Gamma = g^2 / |slope omega_M l_ho|,
// l_ho = sqrt(1 / (2 mu omega_M)); atomic units.
double lz_probability(double g, double slope, double omega_m, double mu);

} // namespace raimsim

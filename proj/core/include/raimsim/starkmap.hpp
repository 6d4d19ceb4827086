#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "raimsim/atomcore.hpp"
#include "raimsim/linalg.hpp"

namespace raimsim {

// Ion-induced multipole operators over a basis. block(s, l') holds
// <a| r^l' C^l'_0 |b> within sector s, so that
//   H_TI(r_ci) = diag(E) - sum_l' block(s, l') / r_ci^(l'+1).
class MultipoleOperator {
public:
    explicit MultipoleOperator(std::shared_ptr<const BasisSet> basis, int l_max = 6,
                               const RadialOptions& radial = {}, unsigned workers = 0);

    const BasisSet& basis() const { return *basis_; }
    std::shared_ptr<const BasisSet> basis_ptr() const { return basis_; }
    int l_max() const { return l_max_; }
    const RadialMatrixCache& radial() const { return *radial_; }

    // bare level energies of sector s (Hartree)
    const VectorXd& energies(int sector) const { return energies_[static_cast<std::size_t>(sector)]; }
    const MatrixXd& block(int sector, int lp) const;

    // <a| r^p C^k_q |b> with a in sector sa and b in sector sb (m_a = m_b + q)
    MatrixXd tensor_block(int p, int k, int q, int sa, int sb) const;

    // field-free nP3/2 level of the centre n, used as energy zero for output
    double reference_energy() const { return reference_energy_; }
    // largest <r> among basis levels (Bohr)
    double max_mean_radius() const { return max_mean_radius_; }

private:
    std::shared_ptr<const BasisSet> basis_;
    int l_max_;
    std::shared_ptr<RadialMatrixCache> radial_;
    std::vector<int> radial_index_;
    std::vector<VectorXd> energies_;
    std::vector<std::vector<MatrixXd>> blocks_;
    double reference_energy_ = 0.0;
    double max_mean_radius_ = 0.0;
};

// Full block-diagonal H_TI over the basis (r_ci in Bohr).
MatrixXd assemble_HTI(const MultipoleOperator& op, double r_ci);
// One m_j sector of H_TI.
MatrixXd assemble_HTI_sector(const MultipoleOperator& op, int sector, double r_ci);

enum class Orientation { Theta0, ThetaPi };

// Second ion and axial trap electrodes (both ions of mass ion_mass in an axial
// trap of angular frequency omega_i, spacing d12; atomic units).
struct Environment {
    bool enabled = false;
    double d12 = 0.0;
    double omega_i = 0.0;
    double ion_mass = 0.0;
    Orientation orientation = Orientation::ThetaPi;
};

// H_full - H_TI for one sector at r_ci (Bohr).
MatrixXd environment_terms(const MultipoleOperator& op, int sector, double r_ci, const Environment& env);

// Sector Hamiltonian including the environment when enabled.
MatrixXd sector_hamiltonian(const MultipoleOperator& op, int sector, double r_ci, const Environment& env = {});

struct PotentialCurveSet {
    int sector = 0;
    double reference_energy = 0.0;           // Hartree
    std::vector<double> r_nm;
    std::vector<VectorXd> energies;          // ascending, Hartree
    std::vector<MatrixXd> vectors;           // only when kept
    std::vector<std::vector<int>> dominant;  // sector-local basis index of the largest component
    // link[k][a]: index at point k+1 of state a at point k; overlap = |<a_k|b_k+1>|
    std::vector<std::vector<int>> link;
    std::vector<std::vector<double>> link_overlap;
    std::size_t diabatic_jumps = 0;

    std::size_t points() const { return r_nm.size(); }
    // state index at every grid point for the curve that starts as state c at point 0
    std::vector<int> follow(int c) const;
};

struct ScanOptions {
    bool keep_vectors = false;
    double jump_threshold = 0.5;
    unsigned workers = 0;
    Environment environment;
};

// Diagonalises the sector Hamiltonian on every grid point (nm, ascending)
// and links eigenstates of neighbouring points by maximal overlap.
PotentialCurveSet diagonalize_scan(const MultipoleOperator& op, int sector, const std::vector<double>& r_nm,
                                   const ScanOptions& opt = {});

// Bijective assignment of states at two neighbouring points; returns the
// partner index and |overlap| for each state of the first point.
void link_states(const MatrixXd& va, const VectorXd& ea, const MatrixXd& vb, const VectorXd& eb,
                 std::vector<int>& link, std::vector<double>& overlap);

struct WellDescriptor {
    std::string label;
    int sector = 0;
    int rank = 0;               // adiabatic curve followed (energy rank in the sector)
    double d_bohr = 0.0;
    double d_nm = 0.0;
    double energy = 0.0;        // minimum, Hartree (absolute)
    double energy_ghz = 0.0;    // minimum relative to the reference level
    double depth_mhz = 0.0;
    double omega = 0.0;         // angular frequency, atomic units
    double omega_mhz = 0.0;     // omega / 2 pi
    double mu_amu = 0.0;
    double fit_half_width_nm = 0.0;
    std::vector<double> vibrational_mhz;  // above the minimum
    bool vibrational_complete = true;
};

struct WellOptions {
    // quadratic fit over +- fit_lho * l_ho around the minimum
    double fit_lho = 2.0;
    int min_fit_points = 5;
};

// Minimum of the adiabatic curve carrying `label` (e.g. "50P1/2") at the
// outermost grid point, searching inward from the outer edge.
WellDescriptor find_well(const PotentialCurveSet& curves, const BasisSet& basis, const std::string& label,
                         double mu_amu, const WellOptions& opt = {});

// Least-squares parabola E = c0 + c1 (r - r0) + c2 (r - r0)^2; returns {c0, c1, c2}.
std::array<double, 3> fit_parabola(const std::vector<double>& r, const std::vector<double>& e, double r0);

struct VibrationalResult {
    std::vector<double> energies;  // Hartree above the sample minimum
    bool complete = true;          // false when fewer bound states than requested
};

// Lowest `count` levels of -1/(2 mu) d^2/dr^2 + V(r) on the sampled window
// (uniform r in Bohr, V in Hartree, mu in electron masses). States above the
// lower window edge are discarded.
VibrationalResult vibrational_states(const std::vector<double>& r, const std::vector<double>& v, double mu,
                                     int count);

struct LocateOptions {
    double search_lo = 0.6;       // search range in units of 1.85 a0 n^2.5
    double search_hi = 1.3;
    int coarse_points = 141;
    int fine_points = 61;
    int vibrational_points = 401;
    int vibrational_count = 5;
    WellOptions well;
    unsigned workers = 0;
    Environment environment;
};

// Coarse scan, refinement around the outermost minimum, harmonic fit and
// vibrational levels for the well of `label`.
WellDescriptor locate_well(const MultipoleOperator& op, const std::string& label, double mu_amu,
                           const LocateOptions& opt = {});

// Energy of state `rank` of the sector Hamiltonian at r (Bohr).
double adiabatic_energy(const MultipoleOperator& op, int sector, int rank, double r, const Environment& env = {});

// Parses "50P1/2" into a level of the given m_j sector.
RydbergLevel parse_level(const std::string& label, int two_mj);

} // namespace raimsim

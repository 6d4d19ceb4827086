#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

namespace raimsim {

// Electronic configuration of the two atoms: g (ground, held by a tweezer)
// or R (Rydberg, bound to its neighbouring ion).
enum class Config { gg, gR, Rg, RR };

inline constexpr std::array<Config, 4> all_configs{Config::gg, Config::gR, Config::Rg, Config::RR};

std::string to_string(Config c);
Config parse_config(const std::string& s);
bool atom_excited(Config c, int atom);   // atom = 0 or 1

using Vector4d = Eigen::Vector4d;
using Matrix4d = Eigen::Matrix4d;

// Axial crystal ion 1, ion 2, atom 1, atom 2; coordinates (z1, z2, zeta1, zeta2).
// Laboratory units: um, amu, us; angular frequencies in rad/us.
struct SystemGeometry {
    double m_i = 9.012;
    double m_a = 86.909;
    double omega_i = 2.0 * 3.14159265358979323846 * 1.0;
    double omega_t = 2.0 * 3.14159265358979323846 * 0.2;
    double omega_m = 2.0 * 3.14159265358979323846 * 36.0;
    double d = 1.735;

    double beta() const { return m_i / (m_i + m_a); }
    double reduced_mass() const { return m_i * m_a / (m_i + m_a); }
    // equilibrium spacing of the bare two-ion crystal
    double ion_spacing() const;
    Vector4d masses() const { return {m_i, m_i, m_a, m_a}; }
    // tweezer centres at -+(d12/2 + d)
    std::array<double, 2> tweezer_centres() const;
    void validate() const;
};

// Geometry from ordinary frequencies in MHz.
SystemGeometry make_geometry(double m_i, double m_a, double f_i_mhz, double f_t_mhz, double f_m_mhz, double d_um);

double potential(const SystemGeometry& g, Config o, const Vector4d& r);
Vector4d gradient(const SystemGeometry& g, Config o, const Vector4d& r);
// Second derivatives of the potential (not mass weighted).
Matrix4d potential_hessian(const SystemGeometry& g, Config o, const Vector4d& r);

// Newton iteration from the bare-crystal guess; atoms stay on the outer branch.
Vector4d equilibrium(const SystemGeometry& g, Config o);

// Mass-weighted Hessian at the equilibrium.
Matrix4d hessian(const SystemGeometry& g, Config o);

struct ModeSpectrum {
    Config config = Config::gg;
    Vector4d equilibrium;
    Vector4d frequencies;   // rad/us, descending
    Matrix4d vectors;       // columns: mass-weighted normal modes, largest component positive
};

ModeSpectrum normal_modes(const SystemGeometry& g, Config o);

// Closed forms: gg exact; RR exact (limit = false) or its omega_M >> omega_i
// limit; gR and Rg only in that limit {omega_M, omega_2, omega_3, omega_t}.
Vector4d analytic_frequencies(const SystemGeometry& g, Config o, bool limit = false);

} // namespace raimsim

#pragma once

#include <numbers>

// Internally everything is in Hartree atomic units (hbar = e = m_e = 4 pi eps0 = 1).
// Frequencies written as "MHz" in the interface mean ordinary frequencies f, the
// corresponding angular frequency being 2 pi f.
namespace raimsim::units {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018
inline constexpr double hartree_hz = 6.579683920502e15;      // E_H / h
inline constexpr double hartree_joule = 4.3597447222071e-18;
inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double bohr_nm = 0.0529177210903;
inline constexpr double time_au_s = 2.4188843265857e-17;    // hbar / E_H
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double amu_kg = 1.66053906660e-27;
inline constexpr double amu_me = amu_kg / electron_mass_kg;   // ~1822.888486
inline constexpr double hbar_js = 1.054571817e-34;

// energy
inline constexpr double energy_to_ghz(double e) { return e * hartree_hz * 1e-9; }
inline constexpr double energy_to_mhz(double e) { return e * hartree_hz * 1e-6; }
inline constexpr double ghz_to_energy(double f) { return f * 1e9 / hartree_hz; }
inline constexpr double mhz_to_energy(double f) { return f * 1e6 / hartree_hz; }

// Hartree energy expressed as an angular frequency in units of GHz (2 pi x 6.5796839e6)
inline constexpr double hartree_angular_ghz() { return 2.0 * pi * hartree_hz * 1e-9; }

// length
inline constexpr double nm_to_bohr(double x) { return x / bohr_nm; }
inline constexpr double bohr_to_nm(double x) { return x * bohr_nm; }
inline constexpr double um_to_bohr(double x) { return x * 1e3 / bohr_nm; }
inline constexpr double bohr_to_um(double x) { return x * bohr_nm * 1e-3; }

// mass
inline constexpr double amu_to_au(double m) { return m * amu_me; }
inline constexpr double au_to_amu(double m) { return m / amu_me; }

// (angular) frequency: f in MHz <-> omega = 2 pi f in atomic units
inline constexpr double mhz_to_angular(double f) { return 2.0 * pi * f * 1e6 * time_au_s; }
inline constexpr double angular_to_mhz(double w) { return w / (2.0 * pi * 1e6 * time_au_s); }
inline constexpr double rad_per_s_to_au(double w) { return w * time_au_s; }
inline constexpr double au_to_rad_per_s(double w) { return w / time_au_s; }

// time
inline constexpr double us_to_au(double t) { return t * 1e-6 / time_au_s; }
inline constexpr double au_to_us(double t) { return t * time_au_s * 1e6; }

// Laboratory unit system used by the crystal/phonon modules:
// length um, mass amu, time us (frequencies in rad/us).
namespace lab {
// e^2 / (4 pi eps0) = E_H a0, in amu um^3 / us^2
inline constexpr double coulomb_k = hartree_joule * bohr_m / amu_kg * 1e18 / 1e12;
// hbar in amu um^2 / us
inline constexpr double hbar = hbar_js / amu_kg * 1e12 / 1e6;
inline constexpr double mhz_to_angular(double f) { return 2.0 * pi * f; }
inline constexpr double angular_to_mhz(double w) { return w / (2.0 * pi); }
} // namespace lab

} // namespace raimsim::units

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "raimsim/franckcondon.hpp"

namespace raimsim {

// Laboratory units throughout: time in us, energies as angular frequencies in rad/us.

struct SchemeState {
    Config config;
    FockLabel n;
    double energy;   // sum_k (n_k + 1/2) omega_k of the configuration's own modes
};

struct SchemeCoupling {
    Config lower;
    Config upper;
    int manifold;    // 1: gg <-> single excitation, 2: single excitation <-> RR
    MatrixXcd s;     // <lower, N| e^{i k zeta} |upper, N'>
};

// Electronic x phonon product states, one block of basis.size() states per configuration.
struct LevelScheme {
    FockBasis basis;
    std::array<ModeSpectrum, 4> spectra;
    std::vector<SchemeState> states;
    std::vector<SchemeCoupling> couplings;

    std::size_t size() const { return states.size(); }
    std::size_t offset(Config c) const { return static_cast<std::size_t>(c) * basis.size(); }
    int index(Config c, const FockLabel& n) const;
    double energy(Config c, const FockLabel& n) const;
};

LevelScheme build_level_scheme(const OverlapSet& overlaps);

// Tone-1 resonance gg,0000 -> gR,0010 and tone-2 resonance gR,0010 -> RR,0001.
double blockade_resonance(const LevelScheme& s);
double antiblockade_resonance(const LevelScheme& s);

// Frame rotating at `single` for the single-excitation manifolds and
// single + doubled for RR.
struct Frame {
    double single = 0.0;
    double doubled = 0.0;
};

struct DriveTone {
    double rabi = 0.0;       // Omega, rad/us
    double detuning = 0.0;   // laser frequency relative to the bare electronic transition, rad/us
    std::function<double(double)> envelope = [](double) { return 1.0; };
};

// f(t) = A |exp(-(t - b)^2 / a) (1 + sum_j c_j cos(w_j t))|
struct CrabPulse {
    double amplitude = 1.0;
    double a = 1.0;     // us^2
    double b = 0.0;     // us
    std::vector<double> c;
    std::vector<double> w;   // rad/us

    double operator()(double t) const { return crab_value(t); }
    double crab_value(double t) const;
    // sets A so that max over [0, t_f] on `points` samples is 1
    void normalize(double t_f, int points = 10000);
};

double crab_envelope(const CrabPulse& p, double t);

struct DynamicsOptions {
    double dt = 1e-3;              // us
    int record_every = 10;
    double prefactor = 1.0;        // coupling = prefactor * Omega f(t) S
    double norm_tol = 1e-6;
};

// H(t) in the rotating frame; Hermitian by construction.
MatrixXcd hamiltonian(const LevelScheme& s, const std::vector<DriveTone>& tones, const Frame& frame, double t,
                      double prefactor = 1.0);

struct Trajectory {
    std::vector<double> t;
    std::vector<std::array<double, 4>> populations;   // gg, gR, Rg, RR summed over phonon states
    std::vector<double> norm;
    VectorXcd final_state;
    double max_rr = 0.0;

    const std::array<double, 4>& final_populations() const { return populations.back(); }
};

VectorXcd ground_state(const LevelScheme& s);
std::array<double, 4> config_populations(const LevelScheme& s, const VectorXcd& psi);

// Exponential midpoint stepping; raises NumericalError when the norm drifts beyond opt.norm_tol.
Trajectory evolve(const LevelScheme& s, const std::vector<DriveTone>& tones, const Frame& frame,
                  const VectorXcd& psi0, double t_f, const DynamicsOptions& opt = {});

// |P_gg - 1/2| + P_gR + |P_RR - 1/2|
double cost(const std::array<double, 4>& populations);
double cost(const LevelScheme& s, const VectorXcd& psi);

// Square pulse on the tone-1 resonance.
Trajectory run_blockade(const LevelScheme& s, double omega1, double t_f, const DynamicsOptions& opt = {});

struct AntiblockadeOptions {
    double omega1 = 2.0 * 3.14159265358979323846 * 0.153;
    double omega2 = 2.0 * 3.14159265358979323846 * 0.14;
    double t_f = 10.0;
    int np = 3;
    int draws = 200;
    std::uint64_t seed = 42;
    // first stage: Gaussian width sqrt(a) and centre b as fractions of t_f
    std::vector<double> width_grid{0.15, 0.2, 0.3, 0.4};
    std::vector<double> centre_grid{0.3, 0.5, 0.7};
    double c_range = 0.5;
    double w_min = 2.0 * 3.14159265358979323846 * 0.05;
    double w_max = 2.0 * 3.14159265358979323846 * 2.0;
    DynamicsOptions dynamics;
    unsigned workers = 0;
};

struct AntiblockadeResult {
    CrabPulse f1, f2;
    double cost = 0.0;
    int best_draw = 0;
    std::vector<double> draw_costs;   // draw 0 is the stage-1 pulse without modulation
    Trajectory trajectory;
};

// Two-stage search: Gaussian grid for (a, b), then random CRAB draws from per-draw seeded streams.
AntiblockadeResult optimize_antiblockade(const LevelScheme& s, const AntiblockadeOptions& opt = {});

// Tones for a pulse pair on the two resonances.
std::vector<DriveTone> antiblockade_tones(const LevelScheme& s, const CrabPulse& f1, const CrabPulse& f2,
                                          double omega1, double omega2);

} // namespace raimsim

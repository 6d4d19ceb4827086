#include "raimsim/dynamics.hpp"
#include "raimsim/error.hpp"

#include <cmath>

namespace raimsim {

LevelScheme build_level_scheme(const OverlapSet& ov)
{
    LevelScheme s;
    s.basis = ov.basis;
    s.spectra = ov.spectra;
    for (Config c : all_configs) {
        const ModeSpectrum& sp = ov.spectrum(c);
        for (const FockLabel& n : s.basis.labels()) {
            double e = 0.0;
            for (int k = 0; k < 4; ++k)
                e += (n.n[static_cast<std::size_t>(k)] + 0.5) * sp.frequencies[k];
            s.states.push_back({c, n, e});
        }
    }
    for (const OverlapTable& t : ov.tables) {
        if (t.s.rows() != static_cast<Eigen::Index>(s.basis.size()) ||
            t.s.cols() != static_cast<Eigen::Index>(s.basis.size()))
            throw ConfigError("overlap table does not match the Fock basis");
        const int manifold = t.from == Config::gg ? 1 : 2;
        s.couplings.push_back({t.from, t.to, manifold, t.s});
    }
    return s;
}

int LevelScheme::index(Config c, const FockLabel& n) const
{
    const int i = basis.index(n);
    if (i < 0)
        throw ConfigError("Fock state " + n.str() + " is outside the truncated basis");
    return static_cast<int>(offset(c)) + i;
}

double LevelScheme::energy(Config c, const FockLabel& n) const
{
    return states[static_cast<std::size_t>(index(c, n))].energy;
}

double blockade_resonance(const LevelScheme& s)
{
    return s.energy(Config::gR, parse_fock("0010")) - s.energy(Config::gg, parse_fock("0000"));
}

double antiblockade_resonance(const LevelScheme& s)
{
    return s.energy(Config::RR, parse_fock("0001")) - s.energy(Config::gR, parse_fock("0010"));
}

double CrabPulse::crab_value(double t) const
{
    if (!(a > 0.0))
        throw DomainError("CRAB width parameter a must be positive");
    double mod = 1.0;
    for (std::size_t j = 0; j < c.size() && j < w.size(); ++j)
        mod += c[j] * std::cos(w[j] * t);
    return std::abs(amplitude * std::exp(-(t - b) * (t - b) / a) * mod);
}

void CrabPulse::normalize(double t_f, int points)
{
    if (!(t_f > 0.0) || points < 2)
        throw DomainError("CRAB normalization needs t_f > 0 and at least 2 points");
    amplitude = 1.0;
    double m = 0.0;
    for (int i = 0; i < points; ++i)
        m = std::max(m, crab_value(t_f * i / (points - 1)));
    if (!(m > 0.0))
        throw NumericalError("CRAB envelope vanishes on [0, t_f]");
    amplitude = 1.0 / m;
}

double crab_envelope(const CrabPulse& p, double t) { return p.crab_value(t); }

} // namespace raimsim

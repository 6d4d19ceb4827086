#include "raimsim/dynamics.hpp"
#include "raimsim/error.hpp"
#include "raimsim/parallel.hpp"

#include <cmath>
#include <random>

namespace raimsim {

MatrixXcd hamiltonian(const LevelScheme& s, const std::vector<DriveTone>& tones, const Frame& frame, double t,
                      double prefactor)
{
    const auto n = static_cast<Eigen::Index>(s.size());
    MatrixXcd h = MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const SchemeState& st = s.states[static_cast<std::size_t>(i)];
        double shift = 0.0;
        if (st.config == Config::gR || st.config == Config::Rg)
            shift = frame.single;
        else if (st.config == Config::RR)
            shift = frame.single + frame.doubled;
        h(i, i) = st.energy - shift;
    }
    const auto m = static_cast<Eigen::Index>(s.basis.size());
    for (const DriveTone& tone : tones) {
        const double amp = prefactor * tone.rabi * tone.envelope(t);
        if (amp == 0.0)
            continue;
        for (const SchemeCoupling& c : s.couplings) {
            const double nu = c.manifold == 1 ? frame.single : frame.doubled;
            const cplx phase = std::polar(amp, (tone.detuning - nu) * t);
            const auto lo = static_cast<Eigen::Index>(s.offset(c.lower));
            const auto up = static_cast<Eigen::Index>(s.offset(c.upper));
            h.block(lo, up, m, m) += phase * c.s;
            h.block(up, lo, m, m) += std::conj(phase) * c.s.adjoint();
        }
    }
    return h;
}

VectorXcd ground_state(const LevelScheme& s)
{
    VectorXcd psi = VectorXcd::Zero(static_cast<Eigen::Index>(s.size()));
    psi[s.index(Config::gg, parse_fock("0000"))] = 1.0;
    return psi;
}

std::array<double, 4> config_populations(const LevelScheme& s, const VectorXcd& psi)
{
    std::array<double, 4> p{};
    const auto m = static_cast<Eigen::Index>(s.basis.size());
    for (Config c : all_configs)
        p[static_cast<std::size_t>(c)] = psi.segment(static_cast<Eigen::Index>(s.offset(c)), m).squaredNorm();
    return p;
}

namespace {

// Coupling part of H(t) applied block by block: out = V(t) x.
struct CouplingOperator {
    const LevelScheme& s;
    std::vector<cplx> coef;   // per coupling, summed over tones (lower-upper element)

    void update(const std::vector<DriveTone>& tones, const Frame& frame, double t, double prefactor)
    {
        coef.assign(s.couplings.size(), cplx(0.0, 0.0));
        for (const DriveTone& tone : tones) {
            const double amp = prefactor * tone.rabi * tone.envelope(t);
            if (amp == 0.0)
                continue;
            for (std::size_t c = 0; c < s.couplings.size(); ++c) {
                const double nu = s.couplings[c].manifold == 1 ? frame.single : frame.doubled;
                coef[c] += std::polar(amp, (tone.detuning - nu) * t);
            }
        }
    }

    void apply(const VectorXcd& x, VectorXcd& out) const
    {
        out.setZero(x.size());
        const auto m = static_cast<Eigen::Index>(s.basis.size());
        for (std::size_t c = 0; c < s.couplings.size(); ++c) {
            if (coef[c] == cplx(0.0, 0.0))
                continue;
            const auto& cp = s.couplings[c];
            const auto lo = static_cast<Eigen::Index>(s.offset(cp.lower));
            const auto up = static_cast<Eigen::Index>(s.offset(cp.upper));
            out.segment(lo, m).noalias() += coef[c] * (cp.s * x.segment(up, m));
            out.segment(up, m).noalias() += std::conj(coef[c]) * (cp.s.adjoint() * x.segment(lo, m));
        }
    }
};

} // namespace

Trajectory evolve(const LevelScheme& s, const std::vector<DriveTone>& tones, const Frame& frame,
                  const VectorXcd& psi0, double t_f, const DynamicsOptions& opt)
{
    if (psi0.size() != static_cast<Eigen::Index>(s.size()))
        throw DomainError("initial state does not match the level scheme");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw DomainError("initial state must be normalized");
    if (!(t_f >= 0.0) || !(opt.dt > 0.0))
        throw ConfigError("evolution needs t_f >= 0 and dt > 0");
    const int steps = std::max(1, static_cast<int>(std::ceil(t_f / opt.dt - 1e-9)));
    const double dt = t_f / steps;
    const int every = std::max(1, opt.record_every);

    // interaction picture with respect to the diagonal part: psi = exp(-i D t) phi
    const auto n = static_cast<Eigen::Index>(s.size());
    const VectorXd diag = hamiltonian(s, {}, frame, 0.0).diagonal().real();
    auto rotation = [&](double t) {
        return VectorXcd((diag * (-t)).unaryExpr([](double x) { return std::polar(1.0, x); }));
    };

    Trajectory tr;
    VectorXcd phi = psi0;
    auto record = [&](double t) {
        tr.t.push_back(t);
        auto p = config_populations(s, phi);
        tr.populations.push_back(p);
        tr.norm.push_back(phi.norm());
        tr.max_rr = std::max(tr.max_rr, p[3]);
    };
    record(0.0);
    CouplingOperator v{s, {}};
    VectorXcd term(n), acc(n), tmp(n);
    for (int k = 0; k < steps; ++k) {
        const double tm = (k + 0.5) * dt;
        v.update(tones, frame, tm, opt.prefactor);
        const VectorXcd rot = rotation(tm);
        // Taylor series of exp(-i V_I dt) phi with V_I = e^{iDt} V e^{-iDt}
        term = phi;
        acc = phi;
        for (int j = 1; j < 40; ++j) {
            v.apply(rot.cwiseProduct(term), tmp);
            term = rot.conjugate().cwiseProduct(tmp) * cplx(0.0, -dt / j);
            acc += term;
            if (term.norm() < 1e-15 * phi.norm())
                break;
        }
        phi = acc;
        tr.max_rr = std::max(tr.max_rr, config_populations(s, phi)[3]);
        if ((k + 1) % every == 0 || k + 1 == steps)
            record((k + 1) * dt);
    }
    const double drift = std::abs(phi.norm() - 1.0);
    if (drift > opt.norm_tol)
        throw NumericalError("norm drift " + std::to_string(drift) + " exceeds tolerance; reduce the time step");
    tr.final_state = rotation(steps * dt).cwiseProduct(phi);
    return tr;
}

double cost(const std::array<double, 4>& p) { return std::abs(p[0] - 0.5) + p[1] + std::abs(p[3] - 0.5); }

double cost(const LevelScheme& s, const VectorXcd& psi) { return cost(config_populations(s, psi)); }

Trajectory run_blockade(const LevelScheme& s, double omega1, double t_f, const DynamicsOptions& opt)
{
    const double d1 = blockade_resonance(s);
    DriveTone tone;
    tone.rabi = omega1;
    tone.detuning = d1;
    return evolve(s, {tone}, Frame{d1, d1}, ground_state(s), t_f, opt);
}

std::vector<DriveTone> antiblockade_tones(const LevelScheme& s, const CrabPulse& f1, const CrabPulse& f2,
                                          double omega1, double omega2)
{
    DriveTone t1, t2;
    t1.rabi = omega1;
    t1.detuning = blockade_resonance(s);
    t1.envelope = [f1](double t) { return f1(t); };
    t2.rabi = omega2;
    t2.detuning = antiblockade_resonance(s);
    t2.envelope = [f2](double t) { return f2(t); };
    return {t1, t2};
}

AntiblockadeResult optimize_antiblockade(const LevelScheme& s, const AntiblockadeOptions& opt)
{
    if (opt.draws < 1)
        throw ConfigError("at least one optimization draw is required");
    if (opt.np < 0)
        throw ConfigError("number of CRAB components must be non-negative");
    if (opt.width_grid.empty() || opt.centre_grid.empty())
        throw ConfigError("first-stage grids must not be empty");
    const Frame frame{blockade_resonance(s), antiblockade_resonance(s)};
    const VectorXcd psi0 = ground_state(s);
    DynamicsOptions dyn = opt.dynamics;
    dyn.record_every = std::max(dyn.record_every, 1 << 30);

    auto run = [&](const CrabPulse& f1, const CrabPulse& f2) {
        return evolve(s, antiblockade_tones(s, f1, f2, opt.omega1, opt.omega2), frame, psi0, opt.t_f, dyn);
    };
    auto gaussian = [&](double width, double centre) {
        CrabPulse p;
        p.a = std::pow(width * opt.t_f, 2);
        p.b = centre * opt.t_f;
        p.normalize(opt.t_f);
        return p;
    };

    // stage 1: per-tone Gaussian envelopes minimising the final single-excitation population
    struct GridPoint {
        double w1, c1, w2, c2, score;
    };
    std::vector<GridPoint> grid;
    for (double w1 : opt.width_grid)
        for (double c1 : opt.centre_grid)
            for (double w2 : opt.width_grid)
                for (double c2 : opt.centre_grid)
                    grid.push_back({w1, c1, w2, c2, 0.0});
    parallel_for(grid.size(), [&](std::size_t i) {
        const GridPoint& gp = grid[i];
        auto pop = run(gaussian(gp.w1, gp.c1), gaussian(gp.w2, gp.c2)).final_populations();
        grid[i].score = pop[1] + pop[2];
    }, opt.workers);
    std::size_t g0 = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i].score < grid[g0].score)
            g0 = i;
    const CrabPulse base1 = gaussian(grid[g0].w1, grid[g0].c1);
    const CrabPulse base2 = gaussian(grid[g0].w2, grid[g0].c2);

    // stage 2: random CRAB modulation, one RNG stream per draw
    std::vector<std::pair<CrabPulse, CrabPulse>> cand(static_cast<std::size_t>(opt.draws));
    for (int d = 0; d < opt.draws; ++d) {
        CrabPulse f1 = base1, f2 = base2;
        if (d > 0) {
            std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                              static_cast<std::uint32_t>(d)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> uc(-opt.c_range, opt.c_range), uw(opt.w_min, opt.w_max);
            for (CrabPulse* p : {&f1, &f2}) {
                for (int j = 0; j < opt.np; ++j) {
                    p->c.push_back(uc(rng));
                    p->w.push_back(uw(rng));
                }
                p->normalize(opt.t_f);
            }
        }
        cand[static_cast<std::size_t>(d)] = {f1, f2};
    }
    AntiblockadeResult res;
    res.draw_costs.assign(cand.size(), 0.0);
    parallel_for(cand.size(), [&](std::size_t i) {
        res.draw_costs[i] = cost(run(cand[i].first, cand[i].second).final_populations());
    }, opt.workers);
    for (std::size_t i = 1; i < cand.size(); ++i)
        if (res.draw_costs[i] < res.draw_costs[static_cast<std::size_t>(res.best_draw)])
            res.best_draw = static_cast<int>(i);
    res.f1 = cand[static_cast<std::size_t>(res.best_draw)].first;
    res.f2 = cand[static_cast<std::size_t>(res.best_draw)].second;
    res.cost = res.draw_costs[static_cast<std::size_t>(res.best_draw)];
    res.trajectory = evolve(s, antiblockade_tones(s, res.f1, res.f2, opt.omega1, opt.omega2), frame, psi0, opt.t_f,
                            opt.dynamics);
    return res;
}

} // namespace raimsim

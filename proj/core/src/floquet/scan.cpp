#include "raimsim/error.hpp"
#include "raimsim/floquet.hpp"
#include "raimsim/parallel.hpp"
#include "raimsim/units.hpp"

#include <algorithm>
#include <cmath>

namespace raimsim {

int raim_rank(const MultipoleOperator& op, const std::string& label, const Environment& env)
{
    const BasisSet& b = op.basis();
    const int sector = b.sector_index(1);
    if (sector < 0)
        throw ConfigError("the m_j = 1/2 sector is required to locate " + label);
    RydbergLevel lv = parse_level(label, 1);
    auto idx = b.find(lv);
    if (!idx)
        throw ConfigError("level " + label + " is not part of the basis");
    const auto local = static_cast<Eigen::Index>(*idx - b.sectors[static_cast<std::size_t>(sector)].offset);
    const double r_far = 1.3 * 1.85 * std::pow(static_cast<double>(lv.n), 2.5);
    auto es = eigh(sector_hamiltonian(op, sector, r_far, env));
    const MatrixXd& v = es.eigenvectors();
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index arg = 0;
        v.col(c).cwiseAbs().maxCoeff(&arg);
        if (arg == local)
            return static_cast<int>(c);
    }
    throw NumericalError("no eigenstate is dominated by " + label);
}

FloquetPointDetail floquet_point(const MultipoleOperator& op, const PaulParts& paul, const TrapDrive& drive,
                                 int rank, double r_nm, const FloquetScanOptions& opt)
{
    const BasisSet& b = op.basis();
    const double r = units::nm_to_bohr(r_nm);
    const int raim_sector = b.sector_index(1);
    const auto dim = static_cast<Eigen::Index>(b.size());

    struct State {
        double e;
        int sector;
        int rank;
    };
    std::vector<State> states;
    MatrixXd vecs = MatrixXd::Zero(dim, dim);
    double e_raim = 0.0;
    for (std::size_t s = 0; s < b.sectors.size(); ++s) {
        const auto& sec = b.sectors[s];
        auto es = eigh(assemble_HTI_sector(op, static_cast<int>(s), r));
        const auto off = static_cast<Eigen::Index>(sec.offset), n = static_cast<Eigen::Index>(sec.size);
        vecs.block(off, off, n, n) = es.eigenvectors();
        for (Eigen::Index i = 0; i < n; ++i)
            states.push_back({es.eigenvalues()[i], static_cast<int>(s), static_cast<int>(i)});
        if (static_cast<int>(s) == raim_sector) {
            if (rank < 0 || rank >= n)
                throw DomainError("RAIM rank outside the m_j = 1/2 sector");
            e_raim = es.eigenvalues()[rank];
        }
    }

    // energy window around the RAIM level in the H_TI eigenbasis
    const double window = opt.energy_window_ghz > 0.0 ? units::ghz_to_energy(opt.energy_window_ghz) : 0.0;
    std::vector<Eigen::Index> keep;
    Eigen::Index raim_col = -1;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const bool is_raim = states[i].sector == raim_sector && states[i].rank == rank;
        if (is_raim || window <= 0.0 || std::abs(states[i].e - e_raim) <= window) {
            if (is_raim)
                raim_col = static_cast<Eigen::Index>(keep.size());
            keep.push_back(static_cast<Eigen::Index>(i));
        }
    }
    const auto m = static_cast<Eigen::Index>(keep.size());
    MatrixXd w(dim, m);
    VectorXd e(m);
    const double ref = op.reference_energy();
    for (Eigen::Index j = 0; j < m; ++j) {
        w.col(j) = vecs.col(keep[static_cast<std::size_t>(j)]);
        e[j] = states[static_cast<std::size_t>(keep[static_cast<std::size_t>(j)])].e - ref;
    }
    MatrixXd v = w.transpose() * paul.at(r) * w;
    v = 0.5 * (v + v.transpose()).eval();
    MatrixXd h = e.asDiagonal();

    MatrixXcd f0 = floquet_propagator(h, v, drive, opt.propagator);
    QuasiSpectrum qs = quasienergy_spectrum(f0, drive.period());
    VectorXcd psi = VectorXcd::Zero(m);
    psi[raim_col] = 1.0;
    RaimIdentification id = identify_raim_state(qs.modes, psi, h);

    FloquetPointDetail out;
    out.point.r_nm = r_nm;
    out.point.e_raim_ghz = units::energy_to_ghz(e_raim - ref);
    out.point.e_flo_ghz = units::energy_to_ghz(id.e_flo);
    out.point.overlap = id.overlap;
    out.point.dimension = static_cast<int>(m);
    out.point.ambiguous = id.ambiguous;
    out.point.unitarity = unitarity_defect(f0);
    out.point.quasienergy_ghz = units::energy_to_ghz(qs.quasienergies[id.index]);

    // partner: the mode with the second-largest RAIM overlap
    if (m > 1) {
        VectorXd ov = qs.modes.row(raim_col).cwiseAbs2().transpose();
        ov[id.index] = -1.0;
        Eigen::Index partner = 0;
        ov.maxCoeff(&partner);
        out.partner_gap = std::abs(fold_quasienergy(qs.quasienergies[id.index] - qs.quasienergies[partner],
                                                    drive.omega_rf));
        VectorXd weight = qs.modes.col(partner).cwiseAbs2();
        weight[raim_col] = -1.0;
        Eigen::Index k = 0;
        weight.maxCoeff(&k);
        const State& st = states[static_cast<std::size_t>(keep[static_cast<std::size_t>(k)])];
        out.partner_sector = st.sector;
        out.partner_rank = st.rank;
    }
    return out;
}

std::vector<bool> detect_spikes(const std::vector<FloquetPoint>& pts, const FloquetScanOptions& opt)
{
    const std::size_t n = pts.size();
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i)
        dev[i] = (pts[i].e_flo_ghz - pts[i].e_raim_ghz) * 1e3;
    auto median = [](std::vector<double> x) {
        const std::size_t h = x.size() / 2;
        std::nth_element(x.begin(), x.begin() + static_cast<long>(h), x.end());
        double m = x[h];
        if (x.size() % 2 == 0) {
            std::nth_element(x.begin(), x.begin() + static_cast<long>(h) - 1, x.end());
            m = 0.5 * (m + x[h - 1]);
        }
        return m;
    };
    std::vector<bool> flag(n, false);
    const std::size_t hw = static_cast<std::size_t>(std::max(1, opt.median_half_window));
    for (std::size_t i = 0; i < n; ++i) {
        if (pts[i].overlap < opt.overlap_threshold) {
            flag[i] = true;
            continue;
        }
        const std::size_t lo = i > hw ? i - hw : 0, hi = std::min(n, i + hw + 1);
        std::vector<double> local(dev.begin() + static_cast<long>(lo), dev.begin() + static_cast<long>(hi));
        const double base = median(local);
        for (double& x : local)
            x = std::abs(x - base);
        const double spread = std::max(median(local), opt.spike_floor_mhz);
        flag[i] = std::abs(dev[i] - base) > opt.spike_factor * spread;
    }
    return flag;
}

FloquetScanResult scan_eflo(const MultipoleOperator& op, const TrapDrive& drive, const std::vector<double>& r_nm,
                            const FloquetScanOptions& opt)
{
    if (r_nm.empty())
        throw ConfigError("Floquet scan grid is empty");
    if (opt.label.empty())
        throw ConfigError("Floquet scan needs the well state label");
    const PaulParts paul = paul_parts(op, drive.axis);
    FloquetScanResult res;
    res.rank = raim_rank(op, opt.label);

    std::vector<FloquetPointDetail> detail(r_nm.size());
    parallel_for(r_nm.size(), [&](std::size_t i) { detail[i] = floquet_point(op, paul, drive, res.rank, r_nm[i], opt); },
                 opt.workers);
    for (const auto& d : detail) {
        res.points.push_back(d.point);
        res.max_unitarity_defect = std::max(res.max_unitarity_defect, d.point.unitarity);
    }
    res.is_crossing = detect_spikes(res.points, opt);

    // one record per run of flagged points, at its lowest overlap
    const int raim_sector = op.basis().sector_index(1);
    for (std::size_t i = 0; i < r_nm.size();) {
        if (!res.is_crossing[i]) {
            ++i;
            continue;
        }
        std::size_t j = i, best = i;
        while (j < r_nm.size() && res.is_crossing[j]) {
            if (res.points[j].overlap < res.points[best].overlap)
                best = j;
            ++j;
        }
        CrossingRecord c;
        c.index = best;
        c.r_nm = r_nm[best];
        c.partner_rank = detail[best].partner_rank;
        const std::size_t s = static_cast<std::size_t>(std::max(1, opt.gap_search_steps));
        const std::size_t lo = best > s ? best - s : 0, hi = std::min(r_nm.size() - 1, best + s);

        double gap = detail[best].partner_gap;
        if (opt.refine_gaps && hi > lo) {
            // golden-section search for the minimum pair separation
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = r_nm[lo], b = r_nm[hi];
            auto f = [&](double x) { return floquet_point(op, paul, drive, res.rank, x, opt).partner_gap; };
            double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
            double f1 = f(x1), f2 = f(x2);
            for (int it = 0; it < opt.golden_iterations; ++it) {
                if (f1 < f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = f(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = f(x2);
                }
            }
            gap = std::min({gap, f1, f2});
        }
        c.gap_mhz = units::energy_to_mhz(gap);

        if (hi > lo && detail[best].partner_sector >= 0) {
            // diabatic detuning rate from the static levels of the pair
            const int ps = detail[best].partner_sector, pr = detail[best].partner_rank;
            auto delta = [&](std::size_t k) {
                const double r = units::nm_to_bohr(r_nm[k]);
                return adiabatic_energy(op, raim_sector, res.rank, r) - adiabatic_energy(op, ps, pr, r);
            };
            c.slope = std::abs(delta(hi) - delta(lo)) / units::nm_to_bohr(r_nm[hi] - r_nm[lo]);
        }
        if (opt.well_omega > 0.0 && opt.well_mu > 0.0)
            c.p_lz = lz_probability(0.5 * gap, c.slope, opt.well_omega, opt.well_mu);
        res.crossings.push_back(c);
        i = j;
    }
    return res;
}

} // namespace raimsim

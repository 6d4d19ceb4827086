#include "raimsim/error.hpp"
#include "raimsim/parallel.hpp"
#include "raimsim/starkmap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace raimsim {

RydbergLevel parse_level(const std::string& label, int two_mj)
{
    std::size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i])))
        ++i;
    if (i == 0)
        throw ConfigError("level label '" + label + "' must start with n");
    int n = std::stoi(label.substr(0, i));
    auto [l, two_j] = parse_term(label.substr(i));
    RydbergLevel lv{n, l, two_j, two_mj};
    if (!is_valid(lv))
        throw ConfigError("level " + label + " does not exist in the m_j = " + std::to_string(two_mj) + "/2 sector");
    return lv;
}

std::array<double, 3> fit_parabola(const std::vector<double>& r, const std::vector<double>& e, double r0)
{
    if (r.size() != e.size() || r.size() < 3)
        throw DomainError("fit_parabola needs at least 3 samples");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(r.size()), 3);
    VectorXd b(static_cast<Eigen::Index>(r.size()));
    // scale the abscissa for conditioning
    double s = 0.0;
    for (double x : r)
        s = std::max(s, std::abs(x - r0));
    if (s == 0.0)
        s = 1.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        double x = (r[i] - r0) / s;
        a(static_cast<Eigen::Index>(i), 0) = 1.0;
        a(static_cast<Eigen::Index>(i), 1) = x;
        a(static_cast<Eigen::Index>(i), 2) = x * x;
        b[static_cast<Eigen::Index>(i)] = e[i];
    }
    VectorXd c = a.colPivHouseholderQr().solve(b);
    return {c[0], c[1] / s, c[2] / (s * s)};
}

VibrationalResult vibrational_states(const std::vector<double>& r, const std::vector<double>& v, double mu, int count)
{
    const std::size_t n = r.size();
    if (n != v.size() || n < 5)
        throw DomainError("vibrational_states needs at least 5 samples");
    if (!(mu > 0.0))
        throw DomainError("vibrational_states: mass must be positive");
    const double h = (r.back() - r.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(r[i] - r[i - 1] - h) > 1e-6 * h)
            throw DomainError("vibrational_states needs a uniform grid");

    const double vmin = *std::min_element(v.begin(), v.end());
    const double edge = std::min(v.front(), v.back()) - vmin;
    const Eigen::Index m = static_cast<Eigen::Index>(n - 2);
    VectorXd diag(m), sub(m - 1);
    const double t = 1.0 / (2.0 * mu * h * h);
    for (Eigen::Index i = 0; i < m; ++i)
        diag[i] = 2.0 * t + (v[static_cast<std::size_t>(i + 1)] - vmin);
    sub.setConstant(-t);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("vibrational eigensolver failed");

    VibrationalResult out;
    for (Eigen::Index i = 0; i < m && static_cast<int>(out.energies.size()) < count; ++i) {
        if (es.eigenvalues()[i] >= edge)
            break;
        out.energies.push_back(es.eigenvalues()[i]);
    }
    out.complete = static_cast<int>(out.energies.size()) == count;
    return out;
}

namespace {

struct SampleWell {
    std::size_t imin = 0;
    double d = 0.0, energy = 0.0, omega = 0.0, depth = 0.0, half_width = 0.0;
};

// outermost strict interior minimum of e(r) (r ascending, Bohr)
std::size_t outer_minimum(const std::vector<double>& e)
{
    for (std::size_t k = e.size() - 2; k >= 1; --k)
        if (e[k] < e[k - 1] && e[k] < e[k + 1])
            return k;
    throw NumericalError("well not found: the tracked curve has no interior local minimum");
}

SampleWell analyse(const std::vector<double>& r, const std::vector<double>& e, double mu, const WellOptions& opt)
{
    if (r.size() < 3)
        throw NumericalError("well not found: fewer than 3 samples");
    SampleWell w;
    w.imin = outer_minimum(e);
    const std::size_t k = w.imin;
    {
        std::vector<double> rr{r[k - 1], r[k], r[k + 1]}, ee{e[k - 1], e[k], e[k + 1]};
        auto c = fit_parabola(rr, ee, r[k]);
        w.d = r[k] - c[1] / (2.0 * c[2]);
        w.energy = c[0] - c[1] * c[1] / (4.0 * c[2]);
        w.omega = std::sqrt(2.0 * c[2] / mu);
    }

    // harmonic fit over +- fit_lho * l_ho, iterated until the window settles
    for (int it = 0; it < 8; ++it) {
        const double lho = std::sqrt(1.0 / (2.0 * mu * w.omega));
        const double half = opt.fit_lho * lho;
        std::vector<std::pair<double, std::size_t>> by_dist;
        for (std::size_t i = 0; i < r.size(); ++i)
            by_dist.push_back({std::abs(r[i] - w.d), i});
        std::sort(by_dist.begin(), by_dist.end());
        std::vector<double> rr, ee;
        for (const auto& [dist, i] : by_dist) {
            if (dist > half && static_cast<int>(rr.size()) >= opt.min_fit_points)
                break;
            rr.push_back(r[i]);
            ee.push_back(e[i]);
        }
        auto c = fit_parabola(rr, ee, w.d);
        if (!(c[2] > 0.0))
            throw NumericalError("well fit has non-positive curvature");
        const double omega = std::sqrt(2.0 * c[2] / mu);
        const bool settled = std::abs(omega - w.omega) < 1e-6 * omega;
        w.omega = omega;
        w.half_width = half;
        if (settled)
            break;
    }

    std::size_t lo = k, hi = k;
    while (lo > 0 && e[lo - 1] > e[lo])
        --lo;
    while (hi + 1 < e.size() && e[hi + 1] > e[hi])
        ++hi;
    w.depth = std::min(e[lo], e[hi]) - w.energy;
    return w;
}

WellDescriptor describe(const SampleWell& s, const std::string& label, int sector, int rank, double reference,
                        double mu_amu)
{
    WellDescriptor w;
    w.label = label;
    w.sector = sector;
    w.rank = rank;
    w.d_bohr = s.d;
    w.d_nm = units::bohr_to_nm(s.d);
    w.energy = s.energy;
    w.energy_ghz = units::energy_to_ghz(s.energy - reference);
    w.depth_mhz = units::energy_to_mhz(s.depth);
    w.omega = s.omega;
    w.omega_mhz = units::angular_to_mhz(s.omega);
    w.mu_amu = mu_amu;
    w.fit_half_width_nm = units::bohr_to_nm(s.half_width);
    return w;
}

int sector_for_wells(const BasisSet& basis)
{
    int s = basis.sector_index(1);
    if (s < 0)
        throw ConfigError("well search needs the m_j = 1/2 sector in the basis");
    return s;
}

int rank_at_outer_edge(const PotentialCurveSet& curves, const BasisSet& basis, const RydbergLevel& lv)
{
    auto idx = basis.find(lv);
    if (!idx)
        throw ConfigError("level " + lv.label() + " is not part of the basis");
    const auto& sec = basis.sectors[static_cast<std::size_t>(curves.sector)];
    const int local = static_cast<int>(*idx - sec.offset);
    const auto& dom = curves.dominant.back();
    for (std::size_t c = 0; c < dom.size(); ++c)
        if (dom[c] == local)
            return static_cast<int>(c);
    throw NumericalError("no eigenstate is dominated by " + lv.label() + " at the outer edge of the scan");
}

} // namespace

WellDescriptor find_well(const PotentialCurveSet& curves, const BasisSet& basis, const std::string& label,
                         double mu_amu, const WellOptions& opt)
{
    if (curves.points() < 3)
        throw NumericalError("well not found: fewer than 3 grid points");
    const int two_mj = basis.sectors[static_cast<std::size_t>(curves.sector)].two_mj;
    RydbergLevel lv = parse_level(label, two_mj);
    const int rank = rank_at_outer_edge(curves, basis, lv);
    std::vector<double> r, e;
    for (std::size_t k = 0; k < curves.points(); ++k) {
        r.push_back(units::nm_to_bohr(curves.r_nm[k]));
        e.push_back(curves.energies[k][rank]);
    }
    const double mu = units::amu_to_au(mu_amu);
    SampleWell s = analyse(r, e, mu, opt);
    WellDescriptor w = describe(s, label, curves.sector, rank, curves.reference_energy, mu_amu);

    // vibrational levels when the samples are dense enough across the well
    std::size_t lo = s.imin, hi = s.imin;
    while (lo > 0 && e[lo - 1] > e[lo])
        --lo;
    while (hi + 1 < e.size() && e[hi + 1] > e[hi])
        ++hi;
    if (hi - lo + 1 >= 200) {
        bool uniform = true;
        const double h = r[lo + 1] - r[lo];
        for (std::size_t i = lo + 1; i <= hi; ++i)
            uniform = uniform && std::abs(r[i] - r[i - 1] - h) < 1e-6 * h;
        if (uniform) {
            std::vector<double> rr(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi) + 1);
            std::vector<double> ee(e.begin() + static_cast<long>(lo), e.begin() + static_cast<long>(hi) + 1);
            auto vib = vibrational_states(rr, ee, mu, 5);
            for (double x : vib.energies)
                w.vibrational_mhz.push_back(units::energy_to_mhz(x));
            w.vibrational_complete = vib.complete;
        }
    }
    return w;
}

double adiabatic_energy(const MultipoleOperator& op, int sector, int rank, double r, const Environment& env)
{
    MatrixXd h = sector_hamiltonian(op, sector, r, env);
    auto es = eigh(h, false);
    return es.eigenvalues()[rank];
}

namespace {

std::vector<double> sample_curve(const MultipoleOperator& op, int sector, int rank, const std::vector<double>& r,
                                 const LocateOptions& opt)
{
    std::vector<double> e(r.size());
    parallel_for(r.size(), [&](std::size_t i) { e[i] = adiabatic_energy(op, sector, rank, r[i], opt.environment); },
                 opt.workers);
    return e;
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return x;
}

} // namespace

WellDescriptor locate_well(const MultipoleOperator& op, const std::string& label, double mu_amu,
                           const LocateOptions& opt)
{
    const BasisSet& basis = op.basis();
    const int sector = sector_for_wells(basis);
    RydbergLevel lv = parse_level(label, 1);
    const double mu = units::amu_to_au(mu_amu);

    // coarse scan around the Inglis-Teller estimate 1.85 a0 n^2.5
    const double guess = 1.85 * std::pow(static_cast<double>(lv.n), 2.5);
    std::vector<double> coarse_nm;
    for (double r : linspace(opt.search_lo * guess, opt.search_hi * guess, opt.coarse_points))
        coarse_nm.push_back(units::bohr_to_nm(r));
    ScanOptions so;
    so.workers = opt.workers;
    so.environment = opt.environment;
    PotentialCurveSet coarse = diagonalize_scan(op, sector, coarse_nm, so);
    WellDescriptor first = find_well(coarse, basis, label, mu_amu, opt.well);
    const int rank = first.rank;
    const double step = units::nm_to_bohr(coarse_nm[1] - coarse_nm[0]);

    // refine the position
    std::vector<double> r = linspace(first.d_bohr - 1.5 * step, first.d_bohr + 1.5 * step, opt.fine_points);
    SampleWell s = analyse(r, sample_curve(op, sector, rank, r, opt), mu, opt.well);

    // harmonic window of +- fit_lho l_ho, resampled until it is self-consistent
    for (int it = 0; it < 3; ++it) {
        const double lho = std::sqrt(1.0 / (2.0 * mu * s.omega));
        const double span = 1.5 * opt.well.fit_lho * lho;
        r = linspace(s.d - span, s.d + span, opt.fine_points);
        SampleWell next = analyse(r, sample_curve(op, sector, rank, r, opt), mu, opt.well);
        const bool settled = std::abs(next.omega - s.omega) < 0.01 * s.omega;
        s = next;
        if (settled)
            break;
    }
    WellDescriptor w = describe(s, label, sector, rank, op.reference_energy(), mu_amu);
    // the refined windows do not reach the barriers; keep the coarse-scan depth
    w.depth_mhz = first.depth_mhz;

    if (opt.vibrational_count > 0) {
        const double lho = std::sqrt(1.0 / (2.0 * mu * s.omega));
        r = linspace(s.d - 8.0 * lho, s.d + 8.0 * lho, opt.vibrational_points);
        auto vib = vibrational_states(r, sample_curve(op, sector, rank, r, opt), mu, opt.vibrational_count);
        for (double x : vib.energies)
            w.vibrational_mhz.push_back(units::energy_to_mhz(x));
        w.vibrational_complete = vib.complete;
    }
    return w;
}

} // namespace raimsim

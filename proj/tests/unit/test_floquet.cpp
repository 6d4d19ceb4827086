#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "raimsim/error.hpp"
#include "raimsim/floquet.hpp"
#include "raimsim/species.hpp"
#include "raimsim/units.hpp"

using namespace raimsim;

namespace {

// Small driven system with Omega = 1 and amplitude c = 1.
struct Toy {
    MatrixXd h, v;
    TrapDrive drive;
};

Toy toy(Waveform w, int steps)
{
    Toy t;
    const int n = 6;
    t.h = MatrixXd::Zero(n, n);
    const double e[] = {-0.41, -0.23, -0.05, 0.12, 0.27, 0.38};
    for (int i = 0; i < n; ++i)
        t.h(i, i) = e[i];
    t.v.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.v(i, j) = 0.15 * std::cos(1.3 * i + 0.7 * j) + 0.15 * std::cos(1.3 * j + 0.7 * i);
    t.drive.q = 0.1;
    t.drive.omega_rf = 1.0;
    t.drive.ion_mass = 40.0;
    t.drive.waveform = w;
    t.drive.steps = steps;
    return t;
}

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

VectorXd sorted(VectorXd x)
{
    std::sort(x.data(), x.data() + x.size());
    return x;
}

const MultipoleOperator& op22()
{
    static const MultipoleOperator op(
        std::make_shared<BasisSet>(build_basis(22, std::vector<int>{1}, QuantumDefectTable::rb87())));
    return op;
}

const MultipoleOperator& op22_three()
{
    static const MultipoleOperator op(
        std::make_shared<BasisSet>(build_basis(22, std::vector<int>{-3, 1, 5}, QuantumDefectTable::rb87())));
    return op;
}

double block_max(const MatrixXd& m, const BasisSector& a, const BasisSector& b)
{
    return m.block(static_cast<Eigen::Index>(a.offset), static_cast<Eigen::Index>(b.offset),
                   static_cast<Eigen::Index>(a.size), static_cast<Eigen::Index>(b.size))
        .cwiseAbs()
        .maxCoeff();
}

} // namespace

TEST_SUITE("floquet") {

TEST_CASE("drive basics")
{
    const Toy t = toy(Waveform::Sinusoidal, 100);
    CHECK(t.drive.amplitude() == doctest::Approx(1.0));
    CHECK(t.drive.period() == doctest::Approx(2.0 * units::pi));
    TrapDrive d = t.drive;
    d.waveform = Waveform::Digital;
    CHECK(d.waveform_at(0.1) == 1.0);
    CHECK(d.waveform_at(2.0) == -1.0);
    CHECK_THROWS_AS(make_drive(0.0, 150.0, Waveform::Sinusoidal, TrapAxis::Radial, 9.012, 100), ConfigError);
    CHECK_THROWS_AS(make_drive(0.1, 150.0, Waveform::Sinusoidal, TrapAxis::Radial, 9.012, 1), ConfigError);
    CHECK(parse_waveform("Digital") == Waveform::Digital);
    CHECK(parse_axis("axial") == TrapAxis::Axial);
    CHECK_THROWS_AS(parse_axis("diagonal"), ConfigError);
}

TEST_CASE("static limit: quasienergies are the folded eigenvalues")
{
    Toy t = toy(Waveform::Sinusoidal, 8000);
    t.drive.q = 0.0;
    PropagatorStats st;
    const MatrixXcd f = floquet_propagator(t.h, t.v, t.drive, {}, &st);
    CHECK(st.distinct_steps == 1);
    CHECK(unitarity_defect(f) < 1e-9);
    const QuasiSpectrum qs = quasienergy_spectrum(f, t.drive.period());
    VectorXd folded(t.h.rows());
    for (Eigen::Index i = 0; i < folded.size(); ++i)
        folded[i] = fold_quasienergy(t.h(i, i), t.drive.omega_rf);
    const VectorXd a = sorted(qs.quasienergies), b = sorted(folded);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) <= 1e-10 * std::abs(b[i]));
}

TEST_CASE("digital drive: cached step unitaries match the direct product")
{
    const Toy t = toy(Waveform::Digital, 200);
    PropagatorStats st;
    const MatrixXcd f = floquet_propagator(t.h, t.v, t.drive, {}, &st);
    CHECK(st.distinct_steps <= 3);
    CHECK(max_abs(f - floquet_propagator_direct(t.h, t.v, t.drive)) < 1e-12);
}

TEST_CASE("sinusoidal drive: interpolated step unitaries match the direct product")
{
    const Toy t = toy(Waveform::Sinusoidal, 400);
    PropagatorStats st;
    const MatrixXcd f = floquet_propagator(t.h, t.v, t.drive, {}, &st);
    CHECK(st.chebyshev_order > 0);
    CHECK(st.symmetric);
    CHECK(max_abs(f - floquet_propagator_direct(t.h, t.v, t.drive)) < 1e-9);
    CHECK(unitarity_defect(f) < 1e-12);
}

TEST_CASE("midpoint Trotter product converges at second order")
{
    Toy ref = toy(Waveform::Sinusoidal, 12800);
    const MatrixXcd f_ref = floquet_propagator(ref.h, ref.v, ref.drive);
    std::vector<double> err;
    for (int n : {50, 100, 200}) {
        const Toy t = toy(Waveform::Sinusoidal, n);
        err.push_back(max_abs(floquet_propagator(t.h, t.v, t.drive) - f_ref));
    }
    for (std::size_t i = 1; i < err.size(); ++i) {
        CHECK(err[i - 1] / err[i] > 3.5);
        CHECK(err[i - 1] / err[i] < 4.5);
    }
}

TEST_CASE("half-period time shift leaves the quasienergy spectrum unchanged")
{
    Toy t = toy(Waveform::Sinusoidal, 400);
    const VectorXd a = sorted(quasienergy_spectrum(floquet_propagator(t.h, t.v, t.drive), 2 * units::pi).quasienergies);
    t.drive.t0 = 0.5 * t.drive.period();
    const VectorXd b = sorted(quasienergy_spectrum(floquet_propagator(t.h, t.v, t.drive), 2 * units::pi).quasienergies);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("RAIM identification is invariant under mode rephasing")
{
    const Toy t = toy(Waveform::Sinusoidal, 200);
    const QuasiSpectrum qs = quasienergy_spectrum(floquet_propagator(t.h, t.v, t.drive), t.drive.period());
    CHECK(unitarity_defect(qs.modes) < 1e-12);
    VectorXcd psi = VectorXcd::Zero(t.h.rows());
    psi[2] = 1.0;
    const RaimIdentification a = identify_raim_state(qs.modes, psi, t.h);
    MatrixXcd rephased = qs.modes;
    for (Eigen::Index c = 0; c < rephased.cols(); ++c)
        rephased.col(c) *= std::polar(1.0, 0.37 * static_cast<double>(c) + 1.0);
    const RaimIdentification b = identify_raim_state(rephased, psi, t.h);
    CHECK(a.index == b.index);
    CHECK(a.overlap == doctest::Approx(b.overlap).epsilon(1e-14));
    CHECK(a.e_flo == doctest::Approx(b.e_flo).epsilon(1e-13));
    CHECK_THROWS_AS(identify_raim_state(qs.modes, VectorXcd::Zero(3), t.h), DomainError);
}

TEST_CASE("quasienergy folding")
{
    const double w = 2.0;
    for (double x : {-7.3, -1.0, -0.2, 0.0, 0.99, 1.0, 5.5}) {
        const double y = fold_quasienergy(x, w);
        CHECK(y > -1.0);
        CHECK(y <= 1.0);
        CHECK(std::abs(std::remainder(x - y, w)) < 1e-12);
    }
    CHECK(fold_quasienergy(-1.0, w) == doctest::Approx(1.0));
}

TEST_CASE("Landau-Zener probability")
{
    const double mu = 1e4, om = 1e-9;
    const double lho = std::sqrt(1.0 / (2.0 * mu * om));
    const double g = 2e-9, slope = 3e-12;
    CHECK(lz_probability(g, slope, om, mu) ==
          doctest::Approx(std::exp(-2.0 * units::pi * g * g / (slope * om * lho))).epsilon(1e-14));
    CHECK(lz_probability(g, -slope, om, mu) == lz_probability(g, slope, om, mu));
    CHECK(lz_probability(0.0, slope, om, mu) == 1.0);
    CHECK(lz_probability(g, 0.0, om, mu) == 0.0);
    CHECK_THROWS_AS(lz_probability(g, slope, 0.0, mu), DomainError);
}

TEST_CASE("spike detection flags outliers and low overlaps only")
{
    std::vector<FloquetPoint> pts(61);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i].e_raim_ghz = -10.0 + 0.01 * static_cast<double>(i);
        pts[i].e_flo_ghz = pts[i].e_raim_ghz + 1e-3 * std::sin(0.3 * static_cast<double>(i));
        pts[i].overlap = 0.999;
    }
    pts[20].e_flo_ghz += 0.05;   // 50 MHz spike
    pts[45].overlap = 0.3;
    FloquetScanOptions opt;
    const auto flags = detect_spikes(pts, opt);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(flags[i] == (i == 20 || i == 45));
}

TEST_CASE("trap orientations need the matching m_j sectors")
{
    CHECK_NOTHROW(check_sectors(op22().basis(), TrapAxis::Radial));
    CHECK_THROWS_AS(check_sectors(op22().basis(), TrapAxis::Axial), ConfigError);
    CHECK_NOTHROW(check_sectors(op22_three().basis(), TrapAxis::Axial));
}

TEST_CASE("Paul operator structure")
{
    const auto& op = op22_three();
    const BasisSet& b = op.basis();
    const double r = units::nm_to_bohr(185.0);

    const MatrixXd ax = paul_operator(op, TrapAxis::Axial, r);
    CHECK(symmetry_defect(ax) < 1e-12 * ax.cwiseAbs().maxCoeff());
    for (const auto& s : b.sectors)
        CHECK(block_max(ax, s, s) == 0.0);
    CHECK(block_max(ax, b.sector(1), b.sector(-3)) > 0.0);

    const PaulParts p = paul_parts(op, TrapAxis::Radial);
    CHECK((p.at(r) - paul_operator(op, TrapAxis::Radial, r)).cwiseAbs().maxCoeff() <
          1e-12 * p.at(r).cwiseAbs().maxCoeff());
    for (const auto& s : b.sectors)
        for (const auto& t : b.sectors) {
            if (s.offset == t.offset) {
                CHECK(block_max(p.cos2phi, s, t) == 0.0);
            } else {
                CHECK(block_max(p.dipole, s, t) == 0.0);
                CHECK(block_max(p.quadratic, s, t) == 0.0);
            }
        }
    // the linear term dominates the sector-changing quadrupole near the well
    const double lin = 2.0 * r * p.dipole.cwiseAbs().maxCoeff();
    CHECK(lin > 10.0 * p.cos2phi.cwiseAbs().maxCoeff());
}

TEST_CASE("22P1/2 Floquet point: static limit and converged propagator")
{
    const auto& op = op22();
    const PaulParts paul = paul_parts(op, TrapAxis::Radial);
    const int rank = raim_rank(op, "22P1/2");
    FloquetScanOptions opt;
    opt.label = "22P1/2";
    opt.energy_window_ghz = 300.0;

    TrapDrive d = make_drive(0.1, 20.0, Waveform::Sinusoidal, TrapAxis::Radial, 9.012, 8000);
    const FloquetPointDetail full = floquet_point(op, paul, d, rank, 185.15, opt);
    CHECK(full.point.unitarity < 1e-9);
    CHECK(full.point.overlap > 0.99);
    CHECK(full.point.dimension > 1);

    d.q = 0.0;
    const FloquetPointDetail stat = floquet_point(op, paul, d, rank, 185.15, opt);
    CHECK(stat.point.overlap == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(stat.point.e_flo_ghz == doctest::Approx(stat.point.e_raim_ghz).epsilon(1e-10));
    CHECK_THROWS_AS(floquet_point(op, paul, d, 100000, 185.15, opt), DomainError);
}

} // TEST_SUITE

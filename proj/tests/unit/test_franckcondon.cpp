#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "raimsim/error.hpp"
#include "raimsim/franckcondon.hpp"
#include "raimsim/units.hpp"

using namespace raimsim;

namespace {

const SystemGeometry& geom()
{
    static const SystemGeometry g;
    return g;
}

const ModeSpectrum& spec(Config c)
{
    static const std::array<ModeSpectrum, 4> s{normal_modes(geom(), Config::gg), normal_modes(geom(), Config::gR),
                                               normal_modes(geom(), Config::Rg), normal_modes(geom(), Config::RR)};
    return s[static_cast<std::size_t>(c)];
}

} // namespace

TEST_SUITE("franckcondon") {

TEST_CASE("Fock labels and bases")
{
    CHECK(parse_fock("0010").n == std::array<int, 4>{0, 0, 1, 0});
    CHECK(parse_fock("1203").str() == "1203");
    CHECK_THROWS_AS(parse_fock("001"), ConfigError);
    CHECK_THROWS_AS(parse_fock("00a0"), ConfigError);

    const FockBasis b = FockBasis::bus_cutoff(1, 3);
    CHECK(b.size() == 40);
    CHECK(b.max_quanta(0) == 1);
    CHECK(b.max_quanta(2) == 3);
    CHECK(b.index(parse_fock("0001")) >= 0);
    CHECK(b.index(parse_fock("2000")) == -1);
    for (std::size_t i = 0; i < b.size(); ++i)
        CHECK(b.index(b[i]) == static_cast<int>(i));
    // sum n_k <= 2 over four modes: C(6, 4)
    CHECK(FockBasis::total(2).size() == 15);
    CHECK_THROWS_AS(FockBasis::bus_cutoff(-1, 3), ConfigError);
}

TEST_CASE("kicked atom")
{
    CHECK(kicked_atom(Config::gg, Config::gR) == 1);
    CHECK(kicked_atom(Config::gg, Config::Rg) == 0);
    CHECK(kicked_atom(Config::gR, Config::RR) == 0);
    CHECK(kicked_atom(Config::Rg, Config::RR) == 1);
    CHECK_THROWS_AS(kicked_atom(Config::gg, Config::RR), ConfigError);
    CHECK_THROWS_AS(kicked_atom(Config::gR, Config::Rg), ConfigError);
}

TEST_CASE("no kick, same configuration: identity")
{
    const FockBasis b = FockBasis::bus_cutoff();
    for (Config c : all_configs) {
        double err = 0.0;
        const MatrixXcd s = overlap_matrix(geom(), spec(c), spec(c), b, b, 0, 0.0, {}, &err);
        CHECK((s - MatrixXcd::Identity(40, 40)).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(err < 1e-8);
    }
}

TEST_CASE("same configuration with a kick: displaced-oscillator closed form")
{
    const ModeSpectrum& s = spec(Config::gg);
    const double k = default_wavenumber, m = geom().m_a;
    for (int atom : {0, 1}) {
        double var = 0.0;
        std::array<double, 4> eta{};
        for (int j = 0; j < 4; ++j) {
            const double v = s.vectors(2 + atom, j);
            const double x2 = units::lab::hbar / (2.0 * m * s.frequencies[j]);
            var += v * v * x2;
            eta[static_cast<std::size_t>(j)] = k * std::abs(v) * std::sqrt(x2);
        }
        const double s00 = std::exp(-0.5 * k * k * var);
        const FockLabel zero = parse_fock("0000");
        CHECK(std::abs(overlap(geom(), s, s, zero, zero, atom, k)) == doctest::Approx(s00).epsilon(1e-8));
        for (int j = 0; j < 4; ++j) {
            FockLabel one = zero;
            one.n[static_cast<std::size_t>(j)] = 1;
            const double expect = eta[static_cast<std::size_t>(j)] * s00;
            CHECK(std::abs(std::abs(overlap(geom(), s, s, zero, one, atom, k)) - expect) < 1e-7 * std::max(expect, 1e-3));
        }
    }
}

TEST_CASE("overlap tables: completeness grows with the cutoff")
{
    const ModeSpectrum &a = spec(Config::gg), &b = spec(Config::gR);
    const FockBasis from = FockBasis::total(0);
    double prev = 0.0;
    for (int n : {1, 2, 4, 6, 8}) {
        const MatrixXcd s = overlap_matrix(geom(), a, b, from, FockBasis::total(n), 1, default_wavenumber);
        const double sum = s.row(0).cwiseAbs2().sum();
        CHECK(sum > prev);
        CHECK(sum <= 1.0 + 1e-8);
        prev = sum;
    }
    // the stiff RAIM mode squeezes the bus wavefunction, so convergence is slow
    CHECK(prev > 0.6);
}

TEST_CASE("overlap tables: quadrature order doubling")
{
    const FockBasis b = FockBasis::bus_cutoff();
    OverlapOptions lo, hi;
    lo.check = hi.check = false;
    hi.kick_order = 2 * lo.kick_order;
    hi.transverse_order = 2 * lo.transverse_order;
    for (auto [x, y] : {std::pair{Config::gg, Config::gR}, std::pair{Config::gR, Config::RR}}) {
        const int atom = kicked_atom(x, y);
        const MatrixXcd s1 = overlap_matrix(geom(), spec(x), spec(y), b, b, atom, default_wavenumber, lo);
        const MatrixXcd s2 = overlap_matrix(geom(), spec(x), spec(y), b, b, atom, default_wavenumber, hi);
        CHECK((s1 - s2).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("overlap set: four tables, mirror-symmetric magnitudes")
{
    const OverlapSet set = build_overlap_tables(geom());
    CHECK(set.tables.size() == 4);
    for (const auto& t : set.tables)
        CHECK(t.quadrature_error < 1e-6);
    // the degenerate gg tweezer modes are localised on one atom each: the mirror swaps them
    const FockBasis& fb = set.basis;
    const MatrixXd a = set.table(Config::gg, Config::gR).s.cwiseAbs();
    const MatrixXd b = set.table(Config::gg, Config::Rg).s.cwiseAbs();
    double diff = 0.0;
    for (std::size_t i = 0; i < fb.size(); ++i) {
        FockLabel m = fb[i];
        std::swap(m.n[2], m.n[3]);
        diff = std::max(diff, (a.row(static_cast<Eigen::Index>(i)) - b.row(fb.index(m))).cwiseAbs().maxCoeff());
    }
    CHECK(diff < 1e-8);
    const MatrixXd c = set.table(Config::gR, Config::RR).s.cwiseAbs();
    const MatrixXd d = set.table(Config::Rg, Config::RR).s.cwiseAbs();
    CHECK((c - d).maxCoeff() < 1e-8);
    CHECK_THROWS_AS(set.table(Config::gR, Config::gg), ConfigError);
}

} // TEST_SUITE

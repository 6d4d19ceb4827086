#include <doctest.h>

#include <cmath>
#include <memory>

#include "raimsim/error.hpp"
#include "raimsim/species.hpp"
#include "raimsim/starkmap.hpp"
#include "raimsim/units.hpp"

using namespace raimsim;

namespace {

const MultipoleOperator& op22()
{
    static const MultipoleOperator op(
        std::make_shared<BasisSet>(build_basis(22, std::vector<int>{1}, QuantumDefectTable::rb87())));
    return op;
}

} // namespace

TEST_SUITE("starkmap") {

TEST_CASE("H_TI is symmetric with orthonormal eigenvectors")
{
    const MatrixXd h = assemble_HTI_sector(op22(), 0, units::nm_to_bohr(185.0));
    CHECK(symmetry_defect(h) < 1e-14 * h.cwiseAbs().maxCoeff());
    const auto es = eigh(h);
    CHECK(orthonormality_defect(es.eigenvectors()) < 1e-12);
    // trace identity
    CHECK(es.eigenvalues().sum() == doctest::Approx(h.trace()).epsilon(1e-13));
    // full assembly is block diagonal over sectors and agrees with the sector block
    CHECK((assemble_HTI(op22(), units::nm_to_bohr(185.0)) - h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multipole blocks: l' = 1 block is the dipole operator")
{
    const auto& op = op22();
    const MatrixXd& d = op.block(0, 1);
    CHECK(symmetry_defect(d) < 1e-12);
    CHECK((d - op.tensor_block(1, 1, 0, 0, 0)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS(op.block(0, 7));
}

TEST_CASE("far from the ion the spectrum returns to the bare levels")
{
    const auto& op = op22();
    const double r = 1e7;
    const auto es = eigh(assemble_HTI_sector(op, 0, r), false);
    VectorXd bare = op.energies(0);
    std::sort(bare.data(), bare.data() + bare.size());
    // hydrogenic fans shift linearly with F = 1/r^2: |dE| <= 3/2 n^2 F
    const double bound = 1.5 * 25 * 25 / (r * r);
    CHECK((es.eigenvalues() - bare).cwiseAbs().maxCoeff() < bound);
}

TEST_CASE("parabola fit is exact for quadratic data")
{
    std::vector<double> r, e;
    for (int i = 0; i < 9; ++i) {
        r.push_back(10.0 + i);
        e.push_back(2.0 - 0.5 * (r.back() - 13.0) + 0.25 * std::pow(r.back() - 13.0, 2));
    }
    const auto c = fit_parabola(r, e, 13.0);
    CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(c[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("vibrational levels of a harmonic well")
{
    const double mu = 1000.0, w = 1e-3, r0 = 50.0;
    std::vector<double> r, v;
    for (int i = 0; i <= 800; ++i) {
        r.push_back(r0 - 4.0 + 8.0 * i / 800.0);
        v.push_back(0.5 * mu * w * w * std::pow(r.back() - r0, 2));
    }
    const auto res = vibrational_states(r, v, mu, 4);
    REQUIRE(res.energies.size() == 4);
    CHECK(res.complete);
    for (int k = 0; k < 4; ++k)
        CHECK(res.energies[static_cast<std::size_t>(k)] == doctest::Approx(w * (k + 0.5)).epsilon(1e-4));
}

TEST_CASE("22P1/2 well: located, bound and harmonic at the bottom")
{
    const double mu = make_species_pair("Rb87", "Be9").reduced_mass_amu();
    LocateOptions lo;
    lo.vibrational_count = 3;
    const WellDescriptor w = locate_well(op22(), "22P1/2", mu, lo);
    CHECK(w.d_nm > 150.0);
    CHECK(w.d_nm < 230.0);
    CHECK(w.depth_mhz > 0.0);
    CHECK(w.omega_mhz > 0.0);
    REQUIRE(w.vibrational_mhz.size() == 3);
    // first spacing within 10% of the harmonic quantum
    CHECK((w.vibrational_mhz[1] - w.vibrational_mhz[0]) == doctest::Approx(w.omega_mhz).epsilon(0.1));
    CHECK(w.vibrational_mhz[0] == doctest::Approx(0.5 * w.omega_mhz).epsilon(0.1));
    // the followed curve really is the well state at the minimum
    const double e = adiabatic_energy(op22(), 0, w.rank, w.d_bohr);
    CHECK(e == doctest::Approx(w.energy).epsilon(1e-9));
}

TEST_CASE("diagonalize_scan links states bijectively")
{
    std::vector<double> r;
    for (int i = 0; i <= 10; ++i)
        r.push_back(180.0 + 0.5 * i);
    const auto curves = diagonalize_scan(op22(), 0, r);
    REQUIRE(curves.points() == r.size());
    for (const auto& link : curves.link) {
        std::vector<int> seen(link.size(), 0);
        for (int b : link)
            ++seen[static_cast<std::size_t>(b)];
        for (int s : seen)
            CHECK(s == 1);
    }
    const auto path = curves.follow(0);
    CHECK(path.size() == r.size());
}

TEST_CASE("environment terms")
{
    Environment env;
    env.enabled = true;
    env.d12 = units::um_to_bohr(9.2);
    env.omega_i = units::mhz_to_angular(1.0);
    env.ion_mass = units::amu_to_au(9.012);
    const double r = units::nm_to_bohr(180.0);
    env.orientation = Orientation::ThetaPi;
    const MatrixXd hpi = environment_terms(op22(), 0, r, env);
    env.orientation = Orientation::Theta0;
    const MatrixXd h0 = environment_terms(op22(), 0, r, env);
    CHECK(symmetry_defect(hpi) < 1e-12 * hpi.cwiseAbs().maxCoeff());
    CHECK((hpi - h0).cwiseAbs().maxCoeff() > 1e-6 * hpi.cwiseAbs().maxCoeff());
    env.d12 = 0.5 * r;
    CHECK_THROWS_AS(environment_terms(op22(), 0, r, env), DomainError);
    env.enabled = false;
    CHECK(environment_terms(op22(), 0, r, env).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("level parsing")
{
    const RydbergLevel lv = parse_level("50P1/2", 1);
    CHECK(lv.n == 50);
    CHECK(lv.l == 1);
    CHECK(lv.two_j == 1);
    CHECK_THROWS_AS(parse_level("50X1/2", 1), ConfigError);
}

} // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "raimsim/atomcore.hpp"
#include "raimsim/error.hpp"

using namespace raimsim;

TEST_SUITE("atomcore") {

TEST_CASE("3j symbols: closed forms")
{
    CHECK(wigner3j(1, 1, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(wigner3j(0.5, 0.5, 1, 0.5, -0.5, 0) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-14));
    // (j j 0; m -m 0) = (-1)^(j-m) / sqrt(2j+1)
    for (int tm = -5; tm <= 5; tm += 2)
        CHECK(wigner3j_2(5, 5, 0, tm, -tm, 0) ==
              doctest::Approx(((5 - tm) / 2 % 2 ? -1.0 : 1.0) / std::sqrt(6.0)).epsilon(1e-14));
    // selection rules
    CHECK(wigner3j(1, 1, 3, 0, 0, 0) == 0.0);
    CHECK(wigner3j(1, 1, 1, 1, 0, 0) == 0.0);
    CHECK(wigner3j(1, 1, 1, 0, 0, 0) == 0.0);   // odd j1 + j2 + j3 with all m = 0
}

TEST_CASE("3j symbols: orthogonality")
{
    const int tj1 = 3, tj2 = 4;   // j1 = 3/2, j2 = 2
    for (int tj3 = 1; tj3 <= 7; tj3 += 2)
        for (int tj3p = 1; tj3p <= 7; tj3p += 2)
            for (int tm3 = -std::min(tj3, tj3p); tm3 <= std::min(tj3, tj3p); tm3 += 2) {
                double s = 0.0;
                for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                    const int tm2 = -tm3 - tm1;
                    if (std::abs(tm2) > tj2)
                        continue;
                    s += wigner3j_2(tj1, tj2, tj3, tm1, tm2, tm3) * wigner3j_2(tj1, tj2, tj3p, tm1, tm2, tm3);
                }
                CHECK((tj3 + 1) * s == doctest::Approx(tj3 == tj3p ? 1.0 : 0.0).epsilon(1e-13));
            }
}

TEST_CASE("6j symbols: special value and orthogonality")
{
    // {a b c; 0 c b} = (-1)^(a+b+c) / sqrt((2b+1)(2c+1))
    CHECK(wigner6j(1, 2, 2, 0, 2, 2) == doctest::Approx(-1.0 / 5.0).epsilon(1e-14));
    CHECK(wigner6j(0.5, 1, 1.5, 0, 1.5, 1) == doctest::Approx(-1.0 / std::sqrt(12.0)).epsilon(1e-14));

    // sum_x (2x+1)(2c+1) {a b x; d e c}{a b x; d e c'} = delta_cc'
    const double a = 1, b = 1.5, d = 1.5, e = 1;
    for (double c = 0; c <= 2; c += 1)
        for (double cp = 0; cp <= 2; cp += 1) {
            double s = 0.0;
            for (double x = 0.5; x <= 2.5; x += 1)
                s += (2 * x + 1) * (2 * c + 1) * wigner6j(a, b, x, d, e, c) * wigner6j(a, b, x, d, e, cp);
            CHECK(s == doctest::Approx(c == cp ? 1.0 : 0.0).epsilon(1e-13));
        }
}

TEST_CASE("Clebsch-Gordan completeness")
{
    // sum_{j,m} |<j1 m1 j2 m2 | j m>|^2 = 1 for every (m1, m2)
    for (int tm1 = -2; tm1 <= 2; tm1 += 2)
        for (int tm2 = -1; tm2 <= 1; tm2 += 2) {
            double s = 0.0;
            for (int tj = 1; tj <= 3; tj += 2)
                s += std::pow(clebsch_gordan_2(2, tm1, 1, tm2, tj, tm1 + tm2), 2);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        }
    CHECK_THROWS_AS(wigner3j(0.3, 1, 1, 0, 0, 0), DomainError);
}

TEST_CASE("quantum defects: bundled table and parser")
{
    const auto rb = QuantumDefectTable::rb87();
    CHECK(rb.species() == "Rb87");
    CHECK(rb.delta(50, 1, 1) == doctest::Approx(2.6548849 + 0.2900 / std::pow(50 - 2.6548849, 2)).epsilon(1e-14));
    CHECK(rb.delta(50, 7, 13) == 0.0);
    CHECK(rb.n_min() == 5);

    std::istringstream good("# version: t1\nRb87 1 1/2 2.5 0.1 5\nCs133 0 1/2 4.0 0.0 6\n");
    const auto t = QuantumDefectTable::parse(good, "Rb87", "good.txt");
    CHECK(t.version() == "t1");
    CHECK(t.channels().size() == 1);

    std::istringstream bad("Rb87 1 1/2 2.5 0.1 5\nRb87 1 x 2.5 0.1 5\n");
    try {
        QuantumDefectTable::parse(bad, "Rb87", "bad.txt");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
    }
    try {
        QuantumDefectTable::load("/nonexistent/defects.txt");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/defects.txt") != std::string::npos);
    }
}

TEST_CASE("level energies and effective numbers")
{
    const auto rb = QuantumDefectTable::rb87();
    const RydbergLevel p = make_level(22, 1, 0.5, 0.5);
    const double ns = 22 - rb.delta(22, 1, 1);
    CHECK(level_energy(p, rb) == doctest::Approx(-0.5 / (ns * ns)).epsilon(1e-15));
    CHECK(effective_numbers(p, rb).n_star == doctest::Approx(ns));
    CHECK(p.label() == "22P1/2");
    CHECK_THROWS_AS(level_energy(make_level(4, 1, 0.5, 0.5), rb), ConfigError);
    CHECK_THROWS_AS(make_level(3, 3, 2.5, 0.5), DomainError);
    CHECK(parse_term("D5/2") == std::pair<int, int>{2, 5});
}

TEST_CASE("hydrogen radial moments")
{
    const auto h = QuantumDefectTable::hydrogen();
    for (int n : {5, 12})
        for (int l : {0, 2, 4}) {
            const RydbergLevel lv = make_level(n, l, l + 0.5, 0.5);
            // s states lose ~1e-6 of their norm to the inner grid cutoff
            CHECK(radial_integral(lv, lv, 0, h) == doctest::Approx(1.0).epsilon(2e-6));
            // <r> = (3n^2 - l(l+1)) / 2, <r^2> = n^2 (5n^2 + 1 - 3l(l+1)) / 2
            CHECK(radial_integral(lv, lv, 1, h) == doctest::Approx(0.5 * (3 * n * n - l * (l + 1))).epsilon(1e-8));
            CHECK(radial_integral(lv, lv, 2, h) ==
                  doctest::Approx(0.5 * n * n * (5.0 * n * n + 1 - 3 * l * (l + 1))).epsilon(1e-8));
        }
    // |<2s| r |2p>| = 3 sqrt(3)
    const RydbergLevel s2 = make_level(2, 0, 0.5, 0.5), p2 = make_level(2, 1, 0.5, 0.5);
    CHECK(std::abs(radial_integral(s2, p2, 1, h)) == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-8));
}

TEST_CASE("radial wavefunctions of different n are orthogonal")
{
    const auto rb = QuantumDefectTable::rb87();
    const RydbergLevel a = make_level(22, 1, 0.5, 0.5), b = make_level(23, 1, 0.5, 0.5);
    CHECK(std::abs(radial_integral(a, b, 0, rb)) < 1e-3);
    CHECK(radial_integral(a, a, 0, rb) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("angular elements")
{
    // |<s1/2, 1/2| C^1_0 |p1/2, 1/2>| = 1/3
    CHECK(std::abs(angular_element_2(0, 1, 1, 1, 1, 1, 1, 0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // selection rules: parity, triangle, m conservation
    CHECK(angular_element_2(0, 1, 1, 0, 1, 1, 1, 0) == 0.0);
    CHECK(angular_element_2(0, 1, 1, 3, 5, 1, 1, 0) == 0.0);
    CHECK(angular_element_2(1, 1, 1, 1, 3, 1, 2, 2) == 0.0);
    // <a|C^k_q|b> = (-1)^q <b|C^k_-q|a>
    for (int q : {-2, 0, 2}) {
        const double ab = angular_element_2(1, 3, 1 + 2 * q, 3, 5, 1, 2, q);
        const double ba = angular_element_2(3, 5, 1, 1, 3, 1 + 2 * q, 2, -q);
        CHECK(ab == doctest::Approx((q % 2 ? -1.0 : 1.0) * ba).epsilon(1e-14));
    }
}

TEST_CASE("basis: level count per m_j sector")
{
    const auto rb = QuantumDefectTable::rb87();
    const BasisSet b = build_basis(22, std::vector<int>{1}, rb);
    // n = 19..25, one j for l = 0 and two for l >= 1: sum (2n - 1)
    std::size_t expected = 0;
    for (int n = 19; n <= 25; ++n)
        expected += static_cast<std::size_t>(2 * n - 1);
    CHECK(b.size() == expected);
    CHECK(b.sectors.size() == 1);
    CHECK(b.find(make_level(22, 1, 0.5, 0.5)).has_value());
    CHECK_FALSE(b.find(make_level(26, 1, 0.5, 0.5)).has_value());

    const BasisSet b3 = build_basis(22, std::vector<int>{-3, 1, 5}, rb);
    // |m_j| = 3/2 drops l = 0 and j = 1/2; |m_j| = 5/2 also drops j = 3/2
    CHECK(b3.sector(-3).size < b3.sector(1).size);
    CHECK(b3.sector(5).size < b3.sector(-3).size);
    CHECK(b3.sector_index(3) == -1);
}

} // TEST_SUITE

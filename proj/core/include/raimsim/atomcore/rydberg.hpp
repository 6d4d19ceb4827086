#pragma once

#include <compare>
#include <string>
#include <utility>

#include "raimsim/atomcore/quantum_defects.hpp"

namespace raimsim {

// |n, l, j, m_j> with s = 1/2; j and m_j are stored doubled.
struct RydbergLevel {
    int n = 1;
    int l = 0;
    int two_j = 1;
    int two_mj = 1;

    double j() const { return 0.5 * two_j; }
    double mj() const { return 0.5 * two_mj; }

    // "22P1/2"
    std::string label() const;
    // "22P1/2(mj=1/2)"
    std::string full_label() const;

    auto operator<=>(const RydbergLevel&) const = default;
};

// Validates the quantum numbers (DomainError on violation).
RydbergLevel make_level(int n, int l, double j, double mj);
bool is_valid(const RydbergLevel& lv);

// "P1/2" -> {l = 1, two_j = 1}; throws ConfigError on bad input.
std::pair<int, int> parse_term(const std::string& term);
char orbital_letter(int l);

struct EffectiveNumbers {
    double delta = 0.0;
    double n_star = 0.0;
    double l_star = 0.0;
    int I = 0;     // floor(delta)
    int k = 0;     // n - l - I - 1, degree of the Laguerre polynomial
};

// n* = n - delta, l* = l - delta + I. Throws DomainError when k < 0.
EffectiveNumbers effective_numbers(const RydbergLevel& lv, const QuantumDefectTable& defects);

// E = -1 / (2 n*^2) in Hartree. ConfigError when n < n_min of the table.
double level_energy(const RydbergLevel& lv, const QuantumDefectTable& defects);

} // namespace raimsim

#include "raimsim/atomcore/rydberg.hpp"
#include "raimsim/error.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace raimsim {

char orbital_letter(int l)
{
    static const char letters[] = "SPDFGHIKLMNOQRTUV";
    if (l >= 0 && l < static_cast<int>(sizeof(letters) - 1))
        return letters[l];
    return '?';
}

namespace {

std::string half(int twice)
{
    if (twice % 2 == 0)
        return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

} // namespace

std::string RydbergLevel::label() const
{
    std::string s = std::to_string(n);
    if (l < 17)
        s += orbital_letter(l);
    else
        s += "(l=" + std::to_string(l) + ")";
    return s + half(two_j);
}

std::string RydbergLevel::full_label() const { return label() + "(mj=" + half(two_mj) + ")"; }

bool is_valid(const RydbergLevel& lv)
{
    if (lv.n < 1 || lv.l < 0 || lv.l >= lv.n)
        return false;
    if (lv.two_j != 2 * lv.l + 1 && lv.two_j != 2 * lv.l - 1)
        return false;
    if (lv.two_j < 1)
        return false;
    if (std::abs(lv.two_mj) > lv.two_j || (lv.two_mj + lv.two_j) % 2 != 0)
        return false;
    return true;
}

RydbergLevel make_level(int n, int l, double j, double mj)
{
    RydbergLevel lv{n, l, static_cast<int>(std::lround(2.0 * j)), static_cast<int>(std::lround(2.0 * mj))};
    if (std::abs(2.0 * j - lv.two_j) > 1e-9 || std::abs(2.0 * mj - lv.two_mj) > 1e-9 || !is_valid(lv))
        throw DomainError("invalid Rydberg level n=" + std::to_string(n) + " l=" + std::to_string(l)
                          + " j=" + std::to_string(j) + " mj=" + std::to_string(mj));
    return lv;
}

std::pair<int, int> parse_term(const std::string& term)
{
    static const std::string letters = "SPDFGHIK";
    if (term.size() < 2)
        throw ConfigError("cannot parse term symbol '" + term + "'");
    auto pos = letters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(term[0]))));
    if (pos == std::string::npos)
        throw ConfigError("unknown orbital letter in '" + term + "'");
    int l = static_cast<int>(pos);
    std::string js = term.substr(1);
    int two_j = -1;
    if (js.size() > 2 && js.substr(js.size() - 2) == "/2") {
        try {
            two_j = std::stoi(js.substr(0, js.size() - 2));
        } catch (const std::exception&) {
            two_j = -1;
        }
    }
    if (two_j != 2 * l + 1 && two_j != 2 * l - 1)
        throw ConfigError("invalid j in term symbol '" + term + "'");
    return {l, two_j};
}

EffectiveNumbers effective_numbers(const RydbergLevel& lv, const QuantumDefectTable& defects)
{
    EffectiveNumbers e;
    e.delta = defects.delta(lv.n, lv.l, lv.two_j);
    e.n_star = lv.n - e.delta;
    e.I = static_cast<int>(std::floor(e.delta));
    e.l_star = lv.l - e.delta + e.I;
    e.k = lv.n - lv.l - e.I - 1;
    if (e.n_star <= 0.0 || e.k < 0)
        throw DomainError("invalid quantum-defect channel for " + lv.label() + ": n* - l* - 1 < 0");
    return e;
}

double level_energy(const RydbergLevel& lv, const QuantumDefectTable& defects)
{
    if (lv.n < defects.n_min())
        throw ConfigError(lv.label() + " is below n_min = " + std::to_string(defects.n_min()) + " of the "
                          + defects.species() + " defect table");
    double ns = lv.n - defects.delta(lv.n, lv.l, lv.two_j);
    return -0.5 / (ns * ns);
}

} // namespace raimsim

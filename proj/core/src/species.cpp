#include "raimsim/species.hpp"
#include "raimsim/error.hpp"

#include <map>

namespace raimsim {

double species_mass_amu(const std::string& name)
{
    static const std::map<std::string, double> masses = {
        {"Be9", 9.012},     {"Mg24", 23.985},  {"Ca40", 39.963}, {"Sr88", 87.906},
        {"Ba138", 137.905}, {"Yb171", 170.936}, {"Li6", 6.015},   {"Li7", 7.016},
        {"Na23", 22.990},   {"K39", 38.964},   {"Rb85", 84.912}, {"Rb87", 86.909},
        {"Cs133", 132.905},
    };
    auto it = masses.find(name);
    if (it == masses.end())
        throw ConfigError("unknown species '" + name + "'");
    return it->second;
}

SpeciesPair make_species_pair(const std::string& atom, const std::string& ion)
{
    return SpeciesPair{atom, ion, species_mass_amu(atom), species_mass_amu(ion)};
}

} // namespace raimsim

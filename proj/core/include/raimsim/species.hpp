#pragma once

#include <string>

namespace raimsim {

// Atomic masses in amu for the species names accepted on the command line.
double species_mass_amu(const std::string& name);

struct SpeciesPair {
    std::string atom = "Rb87";
    std::string ion = "Be9";
    double atom_mass_amu = 86.909;
    double ion_mass_amu = 9.012;

    double reduced_mass_amu() const { return atom_mass_amu * ion_mass_amu / (atom_mass_amu + ion_mass_amu); }
};

SpeciesPair make_species_pair(const std::string& atom, const std::string& ion);

} // namespace raimsim

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace raimsim {

// One Rydberg-Ritz channel: delta(n) = delta0 + delta2 / (n - delta0)^2
struct DefectChannel {
    int l = 0;
    int two_j = 1;
    double delta0 = 0.0;
    double delta2 = 0.0;
    int n_min = 1;
};

class QuantumDefectTable {
public:
    QuantumDefectTable() = default;
    QuantumDefectTable(std::string species, std::vector<DefectChannel> channels, std::string version = "");

    // Bundled 87Rb coefficients (identical to data/rb87_quantum_defects.txt).
    static QuantumDefectTable rb87();
    // No channels at all: every level is hydrogenic.
    static QuantumDefectTable hydrogen();

    // Plain-text table, one row per channel: species l j delta0 delta2 n_min.
    // '#' starts a comment; "# version: X" sets the version tag. Rows for other
    // species are skipped when `species` is non-empty.
    static QuantumDefectTable load(const std::string& path, const std::string& species = "");
    static QuantumDefectTable parse(std::istream& in, const std::string& species, const std::string& source);

    const std::string& species() const { return species_; }
    const std::string& version() const { return version_; }
    const std::vector<DefectChannel>& channels() const { return channels_; }

    // smallest n for which the table is valid
    int n_min() const { return n_min_; }
    // highest l with an explicit channel (-1 if none)
    int max_l() const { return max_l_; }

    const DefectChannel* channel(int l, int two_j) const;
    // quantum defect; 0 for channels not in the table
    double delta(int n, int l, int two_j) const;

private:
    std::string species_ = "H";
    std::string version_;
    std::vector<DefectChannel> channels_;
    int n_min_ = 1;
    int max_l_ = -1;
};

} // namespace raimsim

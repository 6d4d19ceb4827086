#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "raimsim/atomcore/radial.hpp"
#include "raimsim/atomcore/rydberg.hpp"

namespace raimsim {

struct BasisSector {
    int two_mj;
    std::size_t offset;
    std::size_t size;
};

// Truncated Hilbert space n_c - 4 < n < n_c + 4 (all l, all j compatible with
// each requested m_j), ordered by (m_j, n, l, j).
class BasisSet {
public:
    int n_center = 0;
    std::vector<RydbergLevel> levels;
    std::vector<BasisSector> sectors;
    std::shared_ptr<const QuantumDefectTable> defects;

    std::size_t size() const { return levels.size(); }
    // -1 when absent
    int sector_index(int two_mj) const;
    const BasisSector& sector(int two_mj) const;
    std::optional<std::size_t> find(const RydbergLevel& lv) const;

    // distinct (n, l, j) channels and, for every level, its channel index
    std::vector<RadialKey> radial_keys() const;
    std::vector<int> radial_index() const;

    VectorXd energies() const;
};

BasisSet build_basis(int n_c, std::vector<int> two_mj_sectors, const QuantumDefectTable& defects,
                     int half_width = 4);
BasisSet build_basis(int n_c, const std::vector<double>& mj_sectors, const QuantumDefectTable& defects);

} // namespace raimsim

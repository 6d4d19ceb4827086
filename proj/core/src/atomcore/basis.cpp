#include "raimsim/atomcore/basis.hpp"
#include "raimsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace raimsim {

int BasisSet::sector_index(int two_mj) const
{
    for (std::size_t i = 0; i < sectors.size(); ++i)
        if (sectors[i].two_mj == two_mj)
            return static_cast<int>(i);
    return -1;
}

const BasisSector& BasisSet::sector(int two_mj) const
{
    int i = sector_index(two_mj);
    if (i < 0)
        throw ConfigError("basis has no m_j = " + std::to_string(two_mj) + "/2 sector");
    return sectors[static_cast<std::size_t>(i)];
}

std::optional<std::size_t> BasisSet::find(const RydbergLevel& lv) const
{
    auto it = std::lower_bound(levels.begin(), levels.end(), lv, [](const RydbergLevel& a, const RydbergLevel& b) {
        return std::tie(a.two_mj, a.n, a.l, a.two_j) < std::tie(b.two_mj, b.n, b.l, b.two_j);
    });
    if (it != levels.end() && *it == lv)
        return static_cast<std::size_t>(it - levels.begin());
    return std::nullopt;
}

std::vector<RadialKey> BasisSet::radial_keys() const
{
    std::vector<RadialKey> keys;
    for (const auto& lv : levels)
        keys.push_back({lv.n, lv.l, lv.two_j});
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

std::vector<int> BasisSet::radial_index() const
{
    auto keys = radial_keys();
    std::vector<int> idx;
    idx.reserve(levels.size());
    for (const auto& lv : levels) {
        RadialKey k{lv.n, lv.l, lv.two_j};
        idx.push_back(static_cast<int>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin()));
    }
    return idx;
}

VectorXd BasisSet::energies() const
{
    VectorXd e(static_cast<Eigen::Index>(levels.size()));
    for (std::size_t i = 0; i < levels.size(); ++i)
        e[static_cast<Eigen::Index>(i)] = level_energy(levels[i], *defects);
    return e;
}

BasisSet build_basis(int n_c, std::vector<int> two_mj_sectors, const QuantumDefectTable& defects, int half_width)
{
    if (two_mj_sectors.empty())
        throw ConfigError("build_basis: empty list of m_j sectors");
    if (n_c < defects.n_min() + half_width)
        throw ConfigError("build_basis: n_c = " + std::to_string(n_c) + " must be at least n_min + "
                          + std::to_string(half_width) + " = " + std::to_string(defects.n_min() + half_width));
    for (int t : two_mj_sectors)
        if (t % 2 == 0)
            throw ConfigError("build_basis: m_j sectors must be half-integers");
    std::sort(two_mj_sectors.begin(), two_mj_sectors.end());
    two_mj_sectors.erase(std::unique(two_mj_sectors.begin(), two_mj_sectors.end()), two_mj_sectors.end());

    BasisSet b;
    b.n_center = n_c;
    b.defects = std::make_shared<QuantumDefectTable>(defects);
    for (int tm : two_mj_sectors) {
        BasisSector s{tm, b.levels.size(), 0};
        for (int n = n_c - half_width + 1; n <= n_c + half_width - 1; ++n) {
            for (int l = 0; l < n; ++l) {
                for (int tj : {2 * l - 1, 2 * l + 1}) {
                    if (tj < 1 || std::abs(tm) > tj)
                        continue;
                    b.levels.push_back({n, l, tj, tm});
                }
            }
        }
        s.size = b.levels.size() - s.offset;
        b.sectors.push_back(s);
    }
    return b;
}

BasisSet build_basis(int n_c, const std::vector<double>& mj_sectors, const QuantumDefectTable& defects)
{
    std::vector<int> t;
    for (double m : mj_sectors) {
        int tm = static_cast<int>(std::lround(2.0 * m));
        if (std::abs(2.0 * m - tm) > 1e-9)
            throw ConfigError("m_j sector is not a half-integer");
        t.push_back(tm);
    }
    return build_basis(n_c, t, defects);
}

} // namespace raimsim

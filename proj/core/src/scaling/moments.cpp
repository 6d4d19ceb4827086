#include "raimsim/error.hpp"
#include "raimsim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace raimsim {

TransitionMoments transition_moments(const MultipoleOperator& op, const WellDescriptor& well,
                                     const MomentOptions& opt)
{
    const BasisSet& b = op.basis();
    const int s = b.sector_index(1);
    if (s < 0)
        throw ConfigError("transition moments need the m_j = 1/2 sector");
    const double r = well.d_bohr;
    auto es = eigh(assemble_HTI_sector(op, s, r));
    const VectorXd& e = es.eigenvalues();
    const Eigen::Index n = e.size();
    if (well.rank < 0 || well.rank >= n)
        throw DomainError("well rank outside the m_j = 1/2 sector");
    const VectorXd raim = es.eigenvectors().col(well.rank);
    const double e_raim = e[well.rank];

    VectorXd z = (es.eigenvectors().transpose() * (op.tensor_block(1, 1, 0, s, s) * raim)).cwiseAbs();
    z[well.rank] = 0.0;
    const double zmax = z.maxCoeff();

    TransitionMoments out;
    double best = INFINITY;
    for (Eigen::Index i = 0; i < n; ++i)
        if (i != well.rank && z[i] >= opt.coupling_fraction * zmax && std::abs(e[i] - e_raim) < best) {
            best = std::abs(e[i] - e_raim);
            out.k_rank = static_cast<int>(i);
        }
    if (out.k_rank < 0)
        throw NumericalError("no state couples to the well state within the basis");
    out.delta_e = best;
    out.z1 = z[out.k_rank];

    double pair_gap = opt.pair_fraction * out.delta_e;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == well.rank || i == out.k_rank || z[i] < opt.coupling_fraction * zmax)
            continue;
        const double g = std::abs(e[i] - e[out.k_rank]);
        if (g < pair_gap) {
            pair_gap = g;
            out.pair_rank = static_cast<int>(i);
        }
    }
    if (out.pair_rank >= 0)
        out.z2 = z[out.pair_rank];
    out.z = std::hypot(out.z1, out.z2);

    // axial quadrupole couplings to m_j = -3/2 and 5/2
    const int lo = b.sector_index(-3), hi = b.sector_index(5);
    if (lo < 0 || hi < 0)
        return out;
    struct Cand {
        double gap, rho, e;
        int side;
    };
    std::vector<Cand> cands;
    for (int side = 0; side < 2; ++side) {
        const int t = side == 0 ? lo : hi;
        const int q = side == 0 ? -2 : 2;
        auto et = eigh(assemble_HTI_sector(op, t, r));
        VectorXd rho =
            (et.eigenvectors().transpose() * (op.tensor_block(2, 2, q, t, s) * raim)).cwiseAbs() * std::sqrt(2.0 / 3.0);
        for (Eigen::Index i = 0; i < rho.size(); ++i)
            cands.push_back({std::abs(et.eigenvalues()[i] - e_raim), rho[i], et.eigenvalues()[i], side});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& c) { return a.gap < c.gap; });
    double rmax = 0.0;
    for (const auto& c : cands)
        rmax = std::max(rmax, c.rho);
    // only the nearest level may be skipped; the next one and its partner in the other sector form the pair
    std::size_t pick = 0;
    if (cands.size() > 1 && cands[0].rho < opt.rho_fraction * rmax)
        pick = 1;
    const Cand& first = cands[pick];
    const Cand* other = nullptr;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (i == pick || cands[i].side == first.side)
            continue;
        const double de = std::abs(cands[i].e - first.e);
        if (!other || de < std::abs(other->e - first.e))
            other = &cands[i];
    }
    out.has_rho = true;
    out.rho1 = first.rho;
    out.rho2 = other ? other->rho : 0.0;
    out.rho = std::hypot(out.rho1, out.rho2);
    return out;
}

} // namespace raimsim

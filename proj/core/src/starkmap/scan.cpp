#include "raimsim/error.hpp"
#include "raimsim/parallel.hpp"
#include "raimsim/starkmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace raimsim {

std::vector<int> PotentialCurveSet::follow(int c) const
{
    std::vector<int> idx(points());
    if (idx.empty())
        return idx;
    idx[0] = c;
    for (std::size_t k = 0; k + 1 < points(); ++k)
        idx[k + 1] = link[k][static_cast<std::size_t>(idx[k])];
    return idx;
}

void link_states(const MatrixXd& va, const VectorXd& ea, const MatrixXd& vb, const VectorXd& eb,
                 std::vector<int>& link, std::vector<double>& overlap)
{
    const Eigen::Index n = va.cols();
    MatrixXd o = (va.transpose() * vb).cwiseAbs();
    link.assign(static_cast<std::size_t>(n), -1);
    overlap.assign(static_cast<std::size_t>(n), 0.0);

    struct Candidate {
        double value, de;
        Eigen::Index a, b;
    };
    std::vector<Candidate> cand;
    for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index a = 0; a < n; ++a)
            if (o(a, b) > 0.1)
                cand.push_back({o(a, b), std::abs(ea[a] - eb[b]), a, b});
    std::sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) {
        if (x.value != y.value)
            return x.value > y.value;
        return x.de < y.de;
    });
    std::vector<char> used_b(static_cast<std::size_t>(n), 0);
    for (const auto& c : cand) {
        auto a = static_cast<std::size_t>(c.a), b = static_cast<std::size_t>(c.b);
        if (link[a] >= 0 || used_b[b])
            continue;
        link[a] = static_cast<int>(c.b);
        overlap[a] = c.value;
        used_b[b] = 1;
    }
    // leftovers are paired in energy order
    std::vector<Eigen::Index> free_a, free_b;
    for (Eigen::Index a = 0; a < n; ++a)
        if (link[static_cast<std::size_t>(a)] < 0)
            free_a.push_back(a);
    for (Eigen::Index b = 0; b < n; ++b)
        if (!used_b[static_cast<std::size_t>(b)])
            free_b.push_back(b);
    std::sort(free_a.begin(), free_a.end(), [&](auto x, auto y) { return ea[x] < ea[y]; });
    std::sort(free_b.begin(), free_b.end(), [&](auto x, auto y) { return eb[x] < eb[y]; });
    for (std::size_t i = 0; i < free_a.size(); ++i) {
        link[static_cast<std::size_t>(free_a[i])] = static_cast<int>(free_b[i]);
        overlap[static_cast<std::size_t>(free_a[i])] = o(free_a[i], free_b[i]);
    }
}

PotentialCurveSet diagonalize_scan(const MultipoleOperator& op, int sector, const std::vector<double>& r_nm,
                                   const ScanOptions& opt)
{
    if (r_nm.empty())
        throw DomainError("diagonalize_scan: empty grid");
    for (std::size_t k = 1; k < r_nm.size(); ++k)
        if (!(r_nm[k] > r_nm[k - 1]))
            throw DomainError("diagonalize_scan: grid must be strictly ascending");

    PotentialCurveSet out;
    out.sector = sector;
    out.reference_energy = op.reference_energy();
    out.r_nm = r_nm;
    const std::size_t np = r_nm.size();
    out.energies.resize(np);
    out.dominant.resize(np);
    if (np > 1) {
        out.link.resize(np - 1);
        out.link_overlap.resize(np - 1);
    }

    unsigned workers = opt.workers ? opt.workers : default_workers();
    // points are processed in chunks so that only a bounded number of
    // eigenvector matrices is alive when vectors are not kept
    const std::size_t chunk = std::max<std::size_t>(4, 2 * static_cast<std::size_t>(workers));
    std::vector<MatrixXd> vecs(np);
    MatrixXd previous;
    for (std::size_t start = 0; start < np; start += chunk) {
        const std::size_t stop = std::min(np, start + chunk);
        parallel_for(stop - start, [&](std::size_t i) {
            const std::size_t k = start + i;
            MatrixXd h = sector_hamiltonian(op, sector, units::nm_to_bohr(r_nm[k]), opt.environment);
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
            if (es.info() != Eigen::Success) {
                std::ostringstream msg;
                msg << "eigensolver failed at grid point " << k << " (r_ci = " << r_nm[k] << " nm)";
                throw NumericalError(msg.str());
            }
            out.energies[k] = es.eigenvalues();
            vecs[k] = es.eigenvectors();
            auto& dom = out.dominant[k];
            dom.resize(static_cast<std::size_t>(h.rows()));
            for (Eigen::Index c = 0; c < h.rows(); ++c) {
                Eigen::Index imax;
                vecs[k].col(c).cwiseAbs().maxCoeff(&imax);
                dom[static_cast<std::size_t>(c)] = static_cast<int>(imax);
            }
        }, workers);

        parallel_for(stop - start, [&](std::size_t i) {
            const std::size_t k = start + i;
            if (k == 0)
                return;
            const MatrixXd& prev = (k == start) ? previous : vecs[k - 1];
            link_states(prev, out.energies[k - 1], vecs[k], out.energies[k], out.link[k - 1], out.link_overlap[k - 1]);
        }, workers);

        previous = vecs[stop - 1];
        if (!opt.keep_vectors)
            for (std::size_t k = start; k < stop; ++k)
                vecs[k] = MatrixXd();
    }
    for (const auto& ov : out.link_overlap)
        for (double v : ov)
            if (v < opt.jump_threshold)
                ++out.diabatic_jumps;
    if (opt.keep_vectors)
        out.vectors = std::move(vecs);
    return out;
}

} // namespace raimsim

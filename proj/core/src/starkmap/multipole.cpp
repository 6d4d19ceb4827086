#include "raimsim/error.hpp"
#include "raimsim/starkmap.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace raimsim {

MultipoleOperator::MultipoleOperator(std::shared_ptr<const BasisSet> basis, int l_max, const RadialOptions& radial,
                                     unsigned workers)
    : basis_(std::move(basis)), l_max_(l_max)
{
    if (!basis_ || basis_->size() == 0)
        throw ConfigError("multipole operator needs a non-empty basis");
    if (l_max_ < 1 || l_max_ > 12)
        throw ConfigError("multipole order must be between 1 and 12");

    std::vector<int> powers;
    for (int p = 1; p <= std::max(l_max_, 2); ++p)
        powers.push_back(p);
    radial_ = std::make_shared<RadialMatrixCache>(basis_->radial_keys(), *basis_->defects, powers, radial, workers);
    radial_index_ = basis_->radial_index();

    const MatrixXd& r1 = radial_->matrix(1);
    for (Eigen::Index i = 0; i < r1.rows(); ++i)
        max_mean_radius_ = std::max(max_mean_radius_, r1(i, i));

    VectorXd all = basis_->energies();
    for (std::size_t s = 0; s < basis_->sectors.size(); ++s) {
        const auto& sec = basis_->sectors[s];
        energies_.push_back(all.segment(static_cast<Eigen::Index>(sec.offset), static_cast<Eigen::Index>(sec.size)));
        std::vector<MatrixXd> per_l(static_cast<std::size_t>(l_max_ + 1));
        for (int lp = 1; lp <= l_max_; ++lp)
            per_l[static_cast<std::size_t>(lp)] = tensor_block(lp, lp, 0, static_cast<int>(s), static_cast<int>(s));
        blocks_.push_back(std::move(per_l));
    }

    RydbergLevel ref{basis_->n_center, 1, 3, 1};
    reference_energy_ = level_energy(ref, *basis_->defects);
}

const MatrixXd& MultipoleOperator::block(int sector, int lp) const
{
    if (sector < 0 || sector >= static_cast<int>(blocks_.size()) || lp < 1 || lp > l_max_)
        throw DomainError("multipole block index out of range");
    return blocks_[static_cast<std::size_t>(sector)][static_cast<std::size_t>(lp)];
}

MatrixXd MultipoleOperator::tensor_block(int p, int k, int q, int sa, int sb) const
{
    const auto& A = basis_->sectors.at(static_cast<std::size_t>(sa));
    const auto& B = basis_->sectors.at(static_cast<std::size_t>(sb));
    MatrixXd m = MatrixXd::Zero(static_cast<Eigen::Index>(A.size), static_cast<Eigen::Index>(B.size));
    if (A.two_mj != B.two_mj + 2 * q)
        return m;
    const MatrixXd& rad = radial_->matrix(p);
    for (std::size_t i = 0; i < A.size; ++i) {
        const RydbergLevel& a = basis_->levels[A.offset + i];
        const int ia = radial_index_[A.offset + i];
        for (std::size_t j = 0; j < B.size; ++j) {
            const RydbergLevel& b = basis_->levels[B.offset + j];
            if (std::abs(a.l - b.l) > k || (a.l + b.l + k) % 2 != 0)
                continue;
            double ang = angular_matrix_element(a, b, k, q);
            if (ang != 0.0)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rad(ia, radial_index_[B.offset + j]) * ang;
        }
    }
    return m;
}

MatrixXd assemble_HTI_sector(const MultipoleOperator& op, int sector, double r_ci)
{
    if (!(r_ci > 0.0))
        throw DomainError("assemble_HTI: r_ci must be positive");
    if (r_ci < 3.0 * op.max_mean_radius()) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true)) {
            std::ostringstream msg;
            msg << "r_ci = " << units::bohr_to_nm(r_ci) << " nm is below 3<r_e> = "
                << units::bohr_to_nm(3.0 * op.max_mean_radius()) << " nm; multipole series may not converge";
            warn(msg.str());
        }
    }
    MatrixXd h = -op.block(sector, 1) / (r_ci * r_ci);
    double rp = r_ci * r_ci;
    for (int lp = 2; lp <= op.l_max(); ++lp) {
        rp *= r_ci;
        h -= op.block(sector, lp) / rp;
    }
    h.diagonal() += op.energies(sector);
    return h;
}

MatrixXd assemble_HTI(const MultipoleOperator& op, double r_ci)
{
    const auto& b = op.basis();
    MatrixXd h = MatrixXd::Zero(static_cast<Eigen::Index>(b.size()), static_cast<Eigen::Index>(b.size()));
    for (std::size_t s = 0; s < b.sectors.size(); ++s) {
        auto off = static_cast<Eigen::Index>(b.sectors[s].offset);
        auto n = static_cast<Eigen::Index>(b.sectors[s].size);
        h.block(off, off, n, n) = assemble_HTI_sector(op, static_cast<int>(s), r_ci);
    }
    return h;
}

MatrixXd environment_terms(const MultipoleOperator& op, int sector, double r_ci, const Environment& env)
{
    const auto n = static_cast<Eigen::Index>(op.basis().sectors.at(static_cast<std::size_t>(sector)).size);
    MatrixXd h = MatrixXd::Zero(n, n);
    if (!env.enabled)
        return h;
    if (!(r_ci > 0.0))
        throw DomainError("environment_terms: r_ci must be positive");
    const bool theta0 = env.orientation == Orientation::Theta0;
    const double r2 = theta0 ? env.d12 - r_ci : env.d12 + r_ci;
    if (theta0 && !(r2 > 0.0))
        throw DomainError("environment_terms: d12 must exceed r_ci for theta* = 0");

    double p1 = r_ci, p2 = r2;
    for (int lp = 1; lp <= op.l_max(); ++lp) {
        p1 *= r_ci;
        p2 *= r2;
        const MatrixXd& m = op.block(sector, lp);
        // nearest ion seen from the opposite side: parity (-1)^l' relative to H_TI
        if (theta0 && lp % 2 == 1)
            h += 2.0 * m / p1;
        h -= m / p2;
    }

    const int s = sector;
    MatrixXd z = op.tensor_block(1, 1, 0, s, s);
    // z^2 = r^2 (1/3 + 2/3 C^2_0)
    MatrixXd z2 = op.tensor_block(2, 0, 0, s, s) / 3.0 + op.tensor_block(2, 2, 0, s, s) * (2.0 / 3.0);
    const double k = 0.5 * env.ion_mass * env.omega_i * env.omega_i;
    const double lin = theta0 ? env.d12 - 2.0 * r_ci : env.d12 + 2.0 * r_ci;
    h += k * (lin * z - z2);
    return h;
}

MatrixXd sector_hamiltonian(const MultipoleOperator& op, int sector, double r_ci, const Environment& env)
{
    MatrixXd h = assemble_HTI_sector(op, sector, r_ci);
    if (env.enabled)
        h += environment_terms(op, sector, r_ci, env);
    return h;
}

} // namespace raimsim

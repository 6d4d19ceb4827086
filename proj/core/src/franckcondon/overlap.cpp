#include "raimsim/error.hpp"
#include "raimsim/franckcondon.hpp"
#include "raimsim/parallel.hpp"
#include "raimsim/quadrature.hpp"
#include "raimsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace raimsim {

std::string FockLabel::str() const
{
    std::string s;
    for (int x : n)
        s += std::to_string(x);
    return s;
}

FockLabel parse_fock(const std::string& s)
{
    if (s.size() != 4 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ConfigError("Fock label '" + s + "' must be four digits, e.g. 0010");
    FockLabel f;
    for (std::size_t i = 0; i < 4; ++i)
        f.n[i] = s[i] - '0';
    return f;
}

FockBasis FockBasis::bus_cutoff(int high_max, int bus_total)
{
    if (high_max < 0 || bus_total < 0)
        throw ConfigError("Fock cutoffs must be non-negative");
    FockBasis b;
    for (int a = 0; a <= high_max; ++a)
        for (int c = 0; c <= high_max; ++c)
            for (int t = 0; t <= bus_total; ++t)
                for (int n3 = t; n3 >= 0; --n3)
                    b.labels_.push_back({{a, c, n3, t - n3}});
    std::sort(b.labels_.begin(), b.labels_.end());
    return b;
}

FockBasis FockBasis::total(int n_max)
{
    if (n_max < 0)
        throw ConfigError("Fock cutoff must be non-negative");
    FockBasis b;
    for (int a = 0; a <= n_max; ++a)
        for (int c = 0; a + c <= n_max; ++c)
            for (int d = 0; a + c + d <= n_max; ++d)
                for (int e = 0; a + c + d + e <= n_max; ++e)
                    b.labels_.push_back({{a, c, d, e}});
    std::sort(b.labels_.begin(), b.labels_.end());
    return b;
}

int FockBasis::index(const FockLabel& f) const
{
    auto it = std::lower_bound(labels_.begin(), labels_.end(), f);
    return it != labels_.end() && *it == f ? static_cast<int>(it - labels_.begin()) : -1;
}

int FockBasis::max_quanta(int mode) const
{
    int m = 0;
    for (const auto& l : labels_)
        m = std::max(m, l.n[static_cast<std::size_t>(mode)]);
    return m;
}

namespace {

// normalised oscillator functions phi_0..phi_nmax at xi (units of the oscillator length)
void oscillator_functions(double xi, int nmax, double* out)
{
    const double g = std::exp(-0.5 * xi * xi) / std::pow(std::numbers::pi, 0.25);
    out[0] = g;
    if (nmax >= 1)
        out[1] = std::sqrt(2.0) * xi * g;
    for (int n = 2; n <= nmax; ++n)
        out[n] = std::sqrt(2.0 / n) * xi * out[n - 1] - std::sqrt((n - 1.0) / n) * out[n - 2];
}

} // namespace

double mode_wavefunction(const ModeSpectrum& spec, const FockLabel& n, const Vector4d& r)
{
    const double hbar = units::lab::hbar;
    double psi = 1.0;
    for (int k = 0; k < 4; ++k) {
        const double w = spec.frequencies[k];
        const double xi = spec.vectors.col(k).dot(r) * std::sqrt(w / hbar);
        const int m = n.n[static_cast<std::size_t>(k)];
        std::vector<double> f(static_cast<std::size_t>(m + 1));
        oscillator_functions(xi, m, f.data());
        psi *= f[static_cast<std::size_t>(m)] * std::pow(w / hbar, 0.25);
    }
    return psi;
}

namespace {

// Whitened Gauss-Hermite evaluation of the overlap matrix at given orders.
MatrixXcd overlap_at(const SystemGeometry& g, const ModeSpectrum& a, const ModeSpectrum& b, const FockBasis& ba,
                     const FockBasis& bb, int atom, double k, int kick_order, int trans_order)
{
    const double hbar = units::lab::hbar;
    const Vector4d sq = g.masses().cwiseSqrt();
    // Gaussian exponents in physical coordinates: (x - x0)^T A (x - x0) / (2 hbar)
    auto gaussian = [&](const ModeSpectrum& s) {
        Matrix4d v = s.vectors;
        return Matrix4d(sq.asDiagonal() * v * s.frequencies.asDiagonal() * v.transpose() * sq.asDiagonal());
    };
    const Matrix4d A = gaussian(a), B = gaussian(b);
    const Matrix4d S = A + B;
    const Vector4d xc = S.ldlt().solve(A * a.equilibrium + B * b.equilibrium);
    const Matrix4d M = S / (2.0 * hbar);
    Eigen::LLT<Matrix4d> llt(M);
    if (llt.info() != Eigen::Success)
        throw NumericalError("overlap: Gaussian weight matrix is not positive definite");
    const Matrix4d L = llt.matrixL();
    const Matrix4d Linv = L.inverse();
    // x = xc + L^-T y; rotate y so that the kicked coordinate depends on y_0 only
    const Vector4d w = Linv.col(2 + atom);
    Matrix4d R = Matrix4d::Identity();
    {
        Eigen::Matrix4d basis = Matrix4d::Identity();
        basis.col(0) = w.normalized();
        Eigen::HouseholderQR<Matrix4d> qr(basis);
        R = qr.householderQ();
        if (R.col(0).dot(w) < 0.0)
            R.col(0) *= -1.0;
    }
    const Matrix4d T = Linv.transpose() * R;   // x = xc + T y'
    const double jac = std::abs(T.determinant());
    const double kick = k * w.norm();          // zeta_l - xc_l = |w| y'_0

    const QuadratureRule q0 = gauss_hermite(kick_order, true);
    const QuadratureRule qt = gauss_hermite(trans_order, true);
    const std::size_t n0 = q0.x.size(), nt = qt.x.size();
    const std::size_t npts = n0 * nt * nt * nt;

    int max_a[4], max_b[4];
    for (int m = 0; m < 4; ++m) {
        max_a[m] = ba.max_quanta(m);
        max_b[m] = bb.max_quanta(m);
    }
    const double na = std::sqrt(std::sqrt(g.masses().prod()));   // Jacobian of mass weighting, per wavefunction
    const Matrix4d Pa = a.vectors.transpose() * sq.asDiagonal(), Pb = b.vectors.transpose() * sq.asDiagonal();

    MatrixXd fa(static_cast<Eigen::Index>(npts), static_cast<Eigen::Index>(ba.size()));
    MatrixXd fb(static_cast<Eigen::Index>(npts), static_cast<Eigen::Index>(bb.size()));
    VectorXcd weight(static_cast<Eigen::Index>(npts));
    std::size_t p = 0;
    double phi_a[4][16], phi_b[4][16];
    for (std::size_t i0 = 0; i0 < n0; ++i0)
        for (std::size_t i1 = 0; i1 < nt; ++i1)
            for (std::size_t i2 = 0; i2 < nt; ++i2)
                for (std::size_t i3 = 0; i3 < nt; ++i3, ++p) {
                    const Vector4d y(q0.x[i0], qt.x[i1], qt.x[i2], qt.x[i3]);
                    const Vector4d x = xc + T * y;
                    const Vector4d qa = Pa * (x - a.equilibrium), qb = Pb * (x - b.equilibrium);
                    for (int m = 0; m < 4; ++m) {
                        oscillator_functions(qa[m] * std::sqrt(a.frequencies[m] / hbar), max_a[m], phi_a[m]);
                        oscillator_functions(qb[m] * std::sqrt(b.frequencies[m] / hbar), max_b[m], phi_b[m]);
                    }
                    for (std::size_t s = 0; s < ba.size(); ++s) {
                        double v = 1.0;
                        for (int m = 0; m < 4; ++m)
                            v *= phi_a[m][ba[s].n[static_cast<std::size_t>(m)]];
                        fa(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s)) = v;
                    }
                    for (std::size_t s = 0; s < bb.size(); ++s) {
                        double v = 1.0;
                        for (int m = 0; m < 4; ++m)
                            v *= phi_b[m][bb[s].n[static_cast<std::size_t>(m)]];
                        fb(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s)) = v;
                    }
                    const double wt = q0.w[i0] * qt.w[i1] * qt.w[i2] * qt.w[i3];
                    weight[static_cast<Eigen::Index>(p)] = std::polar(wt, kick * y[0]);
                }
    // oscillator normalisations (omega/hbar)^(1/4) per mode and configuration
    double norm = jac * na * na;
    for (int m = 0; m < 4; ++m)
        norm *= std::pow(a.frequencies[m] / hbar, 0.25) * std::pow(b.frequencies[m] / hbar, 0.25);
    MatrixXcd wf = weight.asDiagonal() * fb.cast<cplx>();
    return norm * (fa.transpose().cast<cplx>() * wf);
}

} // namespace

MatrixXcd overlap_matrix(const SystemGeometry& g, const ModeSpectrum& a, const ModeSpectrum& b,
                         const FockBasis& basis_a, const FockBasis& basis_b, int atom, double k,
                         const OverlapOptions& opt, double* error)
{
    if (atom != 0 && atom != 1)
        throw DomainError("kicked atom must be 0 or 1");
    for (const FockBasis* fb : {&basis_a, &basis_b})
        for (int m = 0; m < 4; ++m)
            if (fb->max_quanta(m) > 15)
                throw ConfigError("Fock cutoff above 15 quanta per mode is not supported");
    if (opt.kick_order < 2 || opt.transverse_order < 2)
        throw ConfigError("quadrature orders must be at least 2");
    MatrixXcd s = overlap_at(g, a, b, basis_a, basis_b, atom, k, opt.kick_order, opt.transverse_order);
    if (opt.check) {
        MatrixXcd s2 = overlap_at(g, a, b, basis_a, basis_b, atom, k, opt.kick_order + 8, opt.transverse_order + 8);
        const double err = (s2 - s).cwiseAbs().maxCoeff();
        if (error)
            *error = err;
        if (err > opt.check_tol)
            throw NumericalError("overlap quadrature not converged: orders differing by 8 change entries by " +
                                 std::to_string(err));
    } else if (error) {
        *error = 0.0;
    }
    return s;
}

cplx overlap(const SystemGeometry& g, const ModeSpectrum& a, const ModeSpectrum& b, const FockLabel& na,
             const FockLabel& nb, int atom, double k, const OverlapOptions& opt)
{
    FockBasis ba = FockBasis::total(na.total()), bb = FockBasis::total(nb.total());
    MatrixXcd s = overlap_matrix(g, a, b, ba, bb, atom, k, opt);
    return s(ba.index(na), bb.index(nb));
}

int kicked_atom(Config a, Config b)
{
    const bool d0 = atom_excited(a, 0) != atom_excited(b, 0);
    const bool d1 = atom_excited(a, 1) != atom_excited(b, 1);
    if (d0 == d1)
        throw ConfigError("configurations " + to_string(a) + " and " + to_string(b) +
                          " are not connected by a single excitation");
    return d0 ? 0 : 1;
}

const OverlapTable& OverlapSet::table(Config a, Config b) const
{
    for (const auto& t : tables)
        if (t.from == a && t.to == b)
            return t;
    throw ConfigError("no overlap table for " + to_string(a) + " -> " + to_string(b));
}

OverlapSet build_overlap_tables(const SystemGeometry& g, double k, const FockBasis& basis, const OverlapOptions& opt)
{
    OverlapSet set;
    set.basis = basis;
    for (Config c : all_configs)
        set.spectra[static_cast<std::size_t>(c)] = normal_modes(g, c);
    const std::array<std::pair<Config, Config>, 4> pairs{
        {{Config::gg, Config::gR}, {Config::gg, Config::Rg}, {Config::gR, Config::RR}, {Config::Rg, Config::RR}}};
    set.tables.resize(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        auto [a, b] = pairs[i];
        OverlapTable& t = set.tables[i];
        t.from = a;
        t.to = b;
        t.atom = kicked_atom(a, b);
        t.k = k;
        t.s = overlap_matrix(g, set.spectrum(a), set.spectrum(b), basis, basis, t.atom, k, opt, &t.quadrature_error);
    });
    return set;
}

} // namespace raimsim

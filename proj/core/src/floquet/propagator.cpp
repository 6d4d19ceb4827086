#include "raimsim/error.hpp"
#include "raimsim/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace raimsim {

namespace {

std::vector<double> step_amplitudes(const TrapDrive& drive, bool& palindromic)
{
    const int n = drive.steps;
    const double dt = drive.period() / n;
    const double c = drive.amplitude();
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        a[static_cast<std::size_t>(k)] = c * drive.waveform_at((k + 0.5) * dt);

    palindromic = n % 2 == 0;
    const double tol = 1e-12 * std::abs(c);
    for (int k = 0; palindromic && k < n / 2; ++k)
        palindromic = std::abs(a[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(n - 1 - k)]) <= tol;
    if (palindromic)
        for (int k = 0; k < n / 2; ++k)
            a[static_cast<std::size_t>(n - 1 - k)] = a[static_cast<std::size_t>(k)];
    return a;
}

struct Run {
    double amplitude;
    int length;
};

std::vector<Run> group_runs(const std::vector<double>& a, std::size_t count)
{
    std::vector<Run> runs;
    for (std::size_t k = 0; k < count; ++k) {
        if (!runs.empty() && runs.back().amplitude == a[k])
            ++runs.back().length;
        else
            runs.push_back({a[k], 1});
    }
    return runs;
}

// exp(-i (H + a V) dt) sampled at Chebyshev nodes over [lo, hi] and evaluated by Clenshaw.
class ChebyshevUnitary {
public:
    ChebyshevUnitary(const MatrixXd& h, const MatrixXd& v, double dt, double lo, double hi, int order)
        : lo_(lo), hi_(hi)
    {
        std::vector<MatrixXcd> samples;
        for (int j = 0; j < order; ++j) {
            const double x = std::cos(std::numbers::pi * (j + 0.5) / order);
            samples.push_back(expm_hermitian(MatrixXd(h + to_amplitude(x) * v), dt));
        }
        for (int n = 0; n < order; ++n) {
            MatrixXcd cn = MatrixXcd::Zero(h.rows(), h.cols());
            for (int j = 0; j < order; ++j)
                cn += std::cos(std::numbers::pi * n * (j + 0.5) / order) * samples[static_cast<std::size_t>(j)];
            cn *= (n == 0 ? 1.0 : 2.0) / order;
            coeffs_.push_back(std::move(cn));
        }
    }

    MatrixXcd operator()(double a) const
    {
        const double x = hi_ > lo_ ? (2.0 * a - hi_ - lo_) / (hi_ - lo_) : 0.0;
        const auto m = coeffs_.front().rows();
        MatrixXcd b1 = MatrixXcd::Zero(m, m), b2 = MatrixXcd::Zero(m, m);
        for (std::size_t n = coeffs_.size() - 1; n >= 1; --n) {
            MatrixXcd b0 = 2.0 * x * b1 - b2 + coeffs_[n];
            b2 = std::move(b1);
            b1 = std::move(b0);
        }
        return x * b1 - b2 + coeffs_[0];
    }

private:
    double to_amplitude(double x) const { return 0.5 * (hi_ + lo_) + 0.5 * (hi_ - lo_) * x; }
    double lo_, hi_;
    std::vector<MatrixXcd> coeffs_;
};

MatrixXcd multiply_runs(const MatrixXd& h, const MatrixXd& v, double dt, const std::vector<Run>& runs,
                        const PropagatorOptions& opt, PropagatorStats* stats)
{
    const auto dim = h.rows();
    std::vector<double> singles;
    for (const Run& r : runs)
        if (r.length == 1)
            singles.push_back(r.amplitude);
    std::sort(singles.begin(), singles.end());
    singles.erase(std::unique(singles.begin(), singles.end()), singles.end());

    // interpolation pays off once the distinct steps outnumber the nodes
    std::unique_ptr<ChebyshevUnitary> cheb;
    if (singles.size() > 24 && opt.chebyshev_max >= 4) {
        const double lo = singles.front(), hi = singles.back();
        const double probes[] = {lo + 0.137 * (hi - lo), lo + 0.5007 * (hi - lo), lo + 0.9731 * (hi - lo)};
        for (int order = 8; order <= opt.chebyshev_max && 2 * static_cast<std::size_t>(order) < singles.size();
             order *= 2) {
            auto trial = std::make_unique<ChebyshevUnitary>(h, v, dt, lo, hi, order);
            double err = 0.0;
            for (double a : probes)
                err = std::max(err, (trial->operator()(a) - expm_hermitian(MatrixXd(h + a * v), dt)).cwiseAbs().maxCoeff());
            if (stats)
                stats->chebyshev_error = err;
            if (err <= opt.chebyshev_tol) {
                cheb = std::move(trial);
                if (stats)
                    stats->chebyshev_order = order;
                break;
            }
        }
    }
    if (stats)
        stats->distinct_steps = static_cast<int>(runs.size());

    MatrixXcd f = MatrixXcd::Identity(dim, dim);
    MatrixXcd tmp(dim, dim);
    for (const Run& r : runs) {
        MatrixXcd u = (r.length == 1 && cheb) ? (*cheb)(r.amplitude)
                                              : expm_hermitian(MatrixXd(h + r.amplitude * v), dt * r.length);
        tmp.noalias() = u * f;
        f.swap(tmp);
    }
    return f;
}

void check_inputs(const MatrixXd& h, const MatrixXd& v, const TrapDrive& drive)
{
    if (h.rows() != h.cols() || v.rows() != h.rows() || v.cols() != h.cols())
        throw DomainError("floquet_propagator: H and V must be square and of equal size");
    if (drive.steps < 2)
        throw ConfigError("at least 2 Trotter steps per period are required");
}

} // namespace

MatrixXcd floquet_propagator(const MatrixXd& h, const MatrixXd& v, const TrapDrive& drive,
                             const PropagatorOptions& opt, PropagatorStats* stats)
{
    check_inputs(h, v, drive);
    const double dt = drive.period() / drive.steps;
    bool palindromic = false;
    std::vector<double> a = step_amplitudes(drive, palindromic);
    if (stats)
        *stats = PropagatorStats{};

    if (palindromic && opt.use_symmetry) {
        // every step unitary is complex symmetric, so the second half is the transpose of the first
        MatrixXcd p = multiply_runs(h, v, dt, group_runs(a, a.size() / 2), opt, stats);
        if (stats)
            stats->symmetric = true;
        return p.transpose() * p;
    }
    return multiply_runs(h, v, dt, group_runs(a, a.size()), opt, stats);
}

MatrixXcd floquet_propagator_direct(const MatrixXd& h, const MatrixXd& v, const TrapDrive& drive)
{
    check_inputs(h, v, drive);
    const double dt = drive.period() / drive.steps;
    const double c = drive.amplitude();
    MatrixXcd f = MatrixXcd::Identity(h.rows(), h.cols());
    for (int k = 0; k < drive.steps; ++k) {
        const double a = c * drive.waveform_at((k + 0.5) * dt);
        f = expm_hermitian(MatrixXd(h + a * v), dt) * f;
    }
    return f;
}

double fold_quasienergy(double x, double omega)
{
    double y = std::remainder(x, omega);
    if (y <= -0.5 * omega)
        y += omega;
    if (y > 0.5 * omega)
        y -= omega;
    return y;
}

QuasiSpectrum quasienergy_spectrum(const MatrixXcd& f0, double period, double tol)
{
    if (f0.rows() != f0.cols())
        throw DomainError("quasienergy_spectrum needs a square propagator");
    if (!(period > 0.0))
        throw DomainError("quasienergy_spectrum: period must be positive");
    Eigen::ComplexSchur<MatrixXcd> schur(f0);
    if (schur.info() != Eigen::Success)
        throw NumericalError("Schur decomposition of the Floquet propagator failed");
    const MatrixXcd& t = schur.matrixT();
    QuasiSpectrum out;
    const auto n = f0.rows();
    out.quasienergies.resize(n);
    const double omega = 2.0 * std::numbers::pi / period;
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx lam = t(i, i);
        out.modulus_defect = std::max(out.modulus_defect, std::abs(std::abs(lam) - 1.0));
        out.quasienergies[i] = fold_quasienergy(-std::arg(lam) / period, omega);
    }
    if (out.modulus_defect > tol)
        throw NumericalError("Floquet propagator is not unitary (|lambda| - 1 = " +
                             std::to_string(out.modulus_defect) + "); check the Trotter step construction");
    // a normal matrix has a diagonal Schur form; the Schur vectors are its eigenvectors
    out.modes = schur.matrixU();
    return out;
}

RaimIdentification identify_raim_state(const MatrixXcd& modes, const VectorXcd& psi, const MatrixXd& h,
                                       double ambiguous_below)
{
    if (modes.rows() != psi.size() || h.rows() != psi.size())
        throw DomainError("identify_raim_state: dimension mismatch");
    VectorXd ov = (modes.adjoint() * psi).cwiseAbs2();
    RaimIdentification id;
    Eigen::Index best = 0;
    id.overlap = ov.maxCoeff(&best);
    id.index = static_cast<int>(best);
    const VectorXcd phi = modes.col(best);
    id.e_flo = (phi.adjoint() * h.cast<cplx>() * phi)(0, 0).real();
    id.ambiguous = id.overlap < ambiguous_below;
    return id;
}

double lz_probability(double g, double slope, double omega_m, double mu)
{
    if (!(omega_m > 0.0) || !(mu > 0.0))
        throw DomainError("lz_probability: omega_M and mu must be positive");
    if (g == 0.0)
        return 1.0;
    if (slope == 0.0)
        return 0.0;
    const double lho = std::sqrt(1.0 / (2.0 * mu * omega_m));
    const double gamma = g * g / std::abs(slope * omega_m * lho);
    return std::exp(-2.0 * std::numbers::pi * gamma);
}

} // namespace raimsim

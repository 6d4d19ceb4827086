#include "raimsim/error.hpp"
#include "raimsim/modes.hpp"
#include "raimsim/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace raimsim {

std::string to_string(Config c)
{
    switch (c) {
    case Config::gg: return "gg";
    case Config::gR: return "gR";
    case Config::Rg: return "Rg";
    case Config::RR: return "RR";
    }
    return "?";
}

Config parse_config(const std::string& s)
{
    std::string u = s;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (u == "GG")
        return Config::gg;
    if (u == "GR")
        return Config::gR;
    if (u == "RG")
        return Config::Rg;
    if (u == "RR")
        return Config::RR;
    throw ConfigError("unknown configuration '" + s + "' (expected gg, gR, Rg or RR)");
}

bool atom_excited(Config c, int atom)
{
    if (atom == 0)
        return c == Config::Rg || c == Config::RR;
    return c == Config::gR || c == Config::RR;
}

double SystemGeometry::ion_spacing() const
{
    return std::cbrt(2.0 * units::lab::coulomb_k / (m_i * omega_i * omega_i));
}

std::array<double, 2> SystemGeometry::tweezer_centres() const
{
    const double h = 0.5 * ion_spacing() + d;
    return {-h, h};
}

void SystemGeometry::validate() const
{
    if (!(m_i > 0.0) || !(m_a > 0.0))
        throw ConfigError("masses must be positive");
    if (!(omega_i > 0.0) || !(omega_t > 0.0) || !(omega_m > 0.0))
        throw ConfigError("trap, tweezer and RAIM frequencies must be positive");
    if (!(d > 0.0))
        throw ConfigError("RAIM bond length must be positive");
}

SystemGeometry make_geometry(double m_i, double m_a, double f_i_mhz, double f_t_mhz, double f_m_mhz, double d_um)
{
    SystemGeometry g;
    g.m_i = m_i;
    g.m_a = m_a;
    g.omega_i = units::lab::mhz_to_angular(f_i_mhz);
    g.omega_t = units::lab::mhz_to_angular(f_t_mhz);
    g.omega_m = units::lab::mhz_to_angular(f_m_mhz);
    g.d = d_um;
    g.validate();
    return g;
}

namespace {

double ion_separation(const Vector4d& r)
{
    const double s = r[0] - r[1];
    if (s == 0.0)
        throw DomainError("coincident ions: Coulomb energy is singular");
    return s;
}

} // namespace

double potential(const SystemGeometry& g, Config o, const Vector4d& r)
{
    const double s = ion_separation(r);
    double v = 0.5 * g.m_i * g.omega_i * g.omega_i * (r[0] * r[0] + r[1] * r[1]) + units::lab::coulomb_k / std::abs(s);
    const auto c = g.tweezer_centres();
    const double k = g.reduced_mass() * g.omega_m * g.omega_m;
    for (int l = 0; l < 2; ++l) {
        if (atom_excited(o, l)) {
            const double stretch = std::abs(r[l] - r[2 + l]) - g.d;
            v += 0.5 * k * stretch * stretch;
        } else {
            const double x = r[2 + l] - c[static_cast<std::size_t>(l)];
            v += 0.5 * g.m_a * g.omega_t * g.omega_t * x * x;
        }
    }
    return v;
}

Vector4d gradient(const SystemGeometry& g, Config o, const Vector4d& r)
{
    const double s = ion_separation(r);
    Vector4d f = Vector4d::Zero();
    const double wi2 = g.m_i * g.omega_i * g.omega_i;
    const double fc = -units::lab::coulomb_k * (s > 0 ? 1.0 : -1.0) / (s * s);
    f[0] = wi2 * r[0] + fc;
    f[1] = wi2 * r[1] - fc;
    const auto c = g.tweezer_centres();
    const double k = g.reduced_mass() * g.omega_m * g.omega_m;
    for (int l = 0; l < 2; ++l) {
        if (atom_excited(o, l)) {
            const double u = r[l] - r[2 + l];
            const double t = k * (std::abs(u) - g.d) * (u > 0 ? 1.0 : -1.0);
            f[l] += t;
            f[2 + l] -= t;
        } else {
            f[2 + l] += g.m_a * g.omega_t * g.omega_t * (r[2 + l] - c[static_cast<std::size_t>(l)]);
        }
    }
    return f;
}

Matrix4d potential_hessian(const SystemGeometry& g, Config o, const Vector4d& r)
{
    const double s = ion_separation(r);
    Matrix4d h = Matrix4d::Zero();
    const double wi2 = g.m_i * g.omega_i * g.omega_i;
    const double cc = 2.0 * units::lab::coulomb_k / std::abs(s * s * s);
    h(0, 0) = wi2 + cc;
    h(1, 1) = wi2 + cc;
    h(0, 1) = h(1, 0) = -cc;
    const double k = g.reduced_mass() * g.omega_m * g.omega_m;
    for (int l = 0; l < 2; ++l) {
        if (atom_excited(o, l)) {
            h(l, l) += k;
            h(2 + l, 2 + l) += k;
            h(l, 2 + l) -= k;
            h(2 + l, l) -= k;
        } else {
            h(2 + l, 2 + l) += g.m_a * g.omega_t * g.omega_t;
        }
    }
    return h;
}

Vector4d equilibrium(const SystemGeometry& g, Config o)
{
    g.validate();
    const double d12 = g.ion_spacing();
    const auto c = g.tweezer_centres();
    Vector4d r(-0.5 * d12, 0.5 * d12, c[0], c[1]);
    const double scale = g.m_i * g.omega_i * g.omega_i * d12;
    for (int it = 0; it < 100; ++it) {
        Vector4d f = gradient(g, o, r);
        if (f.norm() < 1e-12 * scale)
            return r;
        Vector4d step = potential_hessian(g, o, r).ldlt().solve(f);
        // damp steps that would move a particle by more than a tenth of the bond
        const double big = step.cwiseAbs().maxCoeff();
        if (big > 0.1 * g.d)
            step *= 0.1 * g.d / big;
        r -= step;
        if (r[0] >= r[1] || r[2] >= r[0] || r[3] <= r[1])
            throw NumericalError("equilibrium search left the outer-atom branch for " + to_string(o));
    }
    throw NumericalError("equilibrium search did not converge for " + to_string(o));
}

Matrix4d hessian(const SystemGeometry& g, Config o)
{
    Matrix4d h = potential_hessian(g, o, equilibrium(g, o));
    const Vector4d w = g.masses().cwiseSqrt().cwiseInverse();
    return w.asDiagonal() * h * w.asDiagonal();
}

ModeSpectrum normal_modes(const SystemGeometry& g, Config o)
{
    ModeSpectrum m;
    m.config = o;
    m.equilibrium = equilibrium(g, o);
    const Vector4d w = g.masses().cwiseSqrt().cwiseInverse();
    Matrix4d a = w.asDiagonal() * potential_hessian(g, o, m.equilibrium) * w.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix4d> es(a);
    if (es.info() != Eigen::Success)
        throw NumericalError("Hessian eigensolver failed");
    Matrix4d vec = es.eigenvectors();
    // degenerate modes (e.g. the two tweezer modes of gg) are localised on coordinates
    for (int i = 0; i < 4;) {
        int j = i + 1;
        while (j < 4 && std::abs(es.eigenvalues()[j] - es.eigenvalues()[i]) <= 1e-9 * std::abs(es.eigenvalues()[i]))
            ++j;
        if (j - i > 1) {
            const Eigen::MatrixXd c = vec.middleCols(i, j - i);
            const Vector4d weight = (c * c.transpose()).diagonal();
            std::array<int, 4> order{0, 1, 2, 3};
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] > weight[b]; });
            // ascending storage is reversed on output, so the lowest coordinate comes first there
            std::sort(order.begin(), order.begin() + (j - i), std::greater<int>());
            for (int m = 0; m < j - i; ++m) {
                Vector4d v = c * c.transpose().col(order[static_cast<std::size_t>(m)]);
                for (int p = 0; p < m; ++p)
                    v -= vec.col(i + p).dot(v) * vec.col(i + p);
                vec.col(i + m) = v.normalized();
            }
        }
        i = j;
    }
    for (int i = 0; i < 4; ++i) {
        const double lam = es.eigenvalues()[3 - i];
        if (!(lam > 0.0))
            throw NumericalError("unstable configuration " + to_string(o) + ": non-positive Hessian eigenvalue");
        m.frequencies[i] = std::sqrt(lam);
        Vector4d v = vec.col(3 - i);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0.0)
            v = -v;
        m.vectors.col(i) = v;
    }
    return m;
}

Vector4d analytic_frequencies(const SystemGeometry& g, Config o, bool limit)
{
    const double wi = g.omega_i, wm = g.omega_m, b = g.beta();
    Vector4d f;
    switch (o) {
    case Config::gg:
        f << std::sqrt(3.0) * wi, wi, g.omega_t, g.omega_t;
        break;
    case Config::RR:
        if (limit) {
            f << wm, wm, std::sqrt(3.0 * b) * wi, std::sqrt(b) * wi;
        } else {
            auto pair = [&](double c, double sign) {
                const double wi2 = wi * wi, wm2 = wm * wm;
                const double root = std::sqrt(c * c * wi2 * wi2 + 2.0 * c * (1.0 - 2.0 * b) * wi2 * wm2 + wm2 * wm2);
                return std::sqrt(c * wi2 + wm2 + sign * root) / std::sqrt(2.0);
            };
            f << pair(3.0, 1.0), pair(1.0, 1.0), pair(3.0, -1.0), pair(1.0, -1.0);
        }
        break;
    case Config::gR:
    case Config::Rg: {
        const double root = std::sqrt(1.0 + b * (b - 1.0));
        f << wm, wi * std::sqrt(1.0 + b + root), wi * std::sqrt(1.0 + b - root), g.omega_t;
        break;
    }
    }
    std::sort(f.data(), f.data() + 4, std::greater<double>());
    return f;
}

} // namespace raimsim

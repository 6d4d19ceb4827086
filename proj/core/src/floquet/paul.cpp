#include "raimsim/error.hpp"
#include "raimsim/floquet.hpp"
#include "raimsim/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace raimsim {

double TrapDrive::period() const
{
    if (!(omega_rf > 0.0))
        throw ConfigError("trap drive frequency must be positive");
    return 2.0 * units::pi / omega_rf;
}

double TrapDrive::amplitude() const { return ion_mass * q * omega_rf * omega_rf / 4.0; }

double TrapDrive::waveform_at(double t) const
{
    const double c = std::cos(omega_rf * (t + t0));
    if (waveform == Waveform::Digital)
        return c >= 0.0 ? 1.0 : -1.0;
    return c;
}

TrapDrive make_drive(double q, double f_rf_mhz, Waveform w, TrapAxis axis, double ion_mass_amu, int steps)
{
    if (!(q > 0.0))
        throw ConfigError("stability parameter q must be positive");
    if (!(f_rf_mhz > 0.0))
        throw ConfigError("drive frequency must be positive");
    if (!(ion_mass_amu > 0.0))
        throw ConfigError("ion mass must be positive");
    if (steps < 2)
        throw ConfigError("at least 2 Trotter steps per period are required");
    TrapDrive d;
    d.q = q;
    d.omega_rf = units::mhz_to_angular(f_rf_mhz);
    d.waveform = w;
    d.axis = axis;
    d.ion_mass = units::amu_to_au(ion_mass_amu);
    d.steps = steps;
    return d;
}

namespace {
std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}
} // namespace

Waveform parse_waveform(const std::string& s)
{
    const std::string v = lower(s);
    if (v == "sinusoidal" || v == "sin" || v == "cos")
        return Waveform::Sinusoidal;
    if (v == "digital" || v == "square")
        return Waveform::Digital;
    throw ConfigError("unknown waveform '" + s + "' (expected sinusoidal or digital)");
}

TrapAxis parse_axis(const std::string& s)
{
    const std::string v = lower(s);
    if (v == "radial")
        return TrapAxis::Radial;
    if (v == "axial")
        return TrapAxis::Axial;
    throw ConfigError("unknown orientation '" + s + "' (expected radial or axial)");
}

void check_sectors(const BasisSet& basis, TrapAxis axis)
{
    std::vector<int> need = axis == TrapAxis::Radial ? std::vector<int>{1} : std::vector<int>{-3, 1, 5};
    std::string missing;
    for (int m : need)
        if (basis.sector_index(m) < 0)
            missing += (missing.empty() ? "" : ", ") + std::to_string(m) + "/2";
    if (!missing.empty()) {
        std::string all;
        for (int m : need)
            all += (all.empty() ? "" : ", ") + std::to_string(m) + "/2";
        throw ConfigError(std::string(axis == TrapAxis::Radial ? "radial" : "axial") +
                          " Paul operator needs m_j sectors {" + all + "}; missing " + missing);
    }
}

PaulParts paul_parts(const MultipoleOperator& op, TrapAxis axis)
{
    const BasisSet& b = op.basis();
    check_sectors(b, axis);
    const auto dim = static_cast<Eigen::Index>(b.size());
    PaulParts p;
    p.dipole = MatrixXd::Zero(dim, dim);
    p.quadratic = MatrixXd::Zero(dim, dim);
    p.cos2phi = MatrixXd::Zero(dim, dim);

    const double c22 = axis == TrapAxis::Radial ? -1.0 / std::sqrt(6.0) : -std::sqrt(2.0 / 3.0);
    for (std::size_t sa = 0; sa < b.sectors.size(); ++sa) {
        const auto& A = b.sectors[sa];
        const auto oa = static_cast<Eigen::Index>(A.offset), na = static_cast<Eigen::Index>(A.size);
        const int ia = static_cast<int>(sa);
        if (axis == TrapAxis::Radial) {
            p.dipole.block(oa, oa, na, na) = op.tensor_block(1, 1, 0, ia, ia);
            p.quadratic.block(oa, oa, na, na) = -op.tensor_block(2, 2, 0, ia, ia);
        }
        for (int q : {-2, 2}) {
            const int sb = b.sector_index(A.two_mj - 2 * q);
            if (sb < 0)
                continue;
            const auto& B = b.sectors[static_cast<std::size_t>(sb)];
            p.cos2phi.block(oa, static_cast<Eigen::Index>(B.offset), na, static_cast<Eigen::Index>(B.size)) =
                c22 * op.tensor_block(2, 2, q, ia, sb);
        }
    }
    return p;
}

MatrixXd PaulParts::at(double r_ci) const { return 2.0 * r_ci * dipole + quadratic + cos2phi; }

MatrixXd paul_operator(const MultipoleOperator& op, TrapAxis axis, double r_ci)
{
    return paul_parts(op, axis).at(r_ci);
}

} // namespace raimsim

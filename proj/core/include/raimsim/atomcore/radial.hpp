#pragma once

#include <map>
#include <vector>

#include "raimsim/atomcore/rydberg.hpp"
#include "raimsim/linalg.hpp"

namespace raimsim {

// Quantum-defect radial function R(r) (atomic units), normalised on [0, inf).
double radial_wavefunction(const RydbergLevel& lv, const QuantumDefectTable& defects, double r);

// Composite Gauss-Legendre rule in x = sqrt(r) on [r_min, r_max]; weights
// include the Jacobian so that sum w_i f(r_i) ~ int f(r) dr.
class RadialGrid {
public:
    RadialGrid(double r_min, double r_max, int panels, int order = 16);
    const VectorXd& r() const { return r_; }
    const VectorXd& w() const { return w_; }
    int panels() const { return panels_; }

private:
    VectorXd r_, w_;
    int panels_;
};

struct RadialOptions {
    double r_core = 0.05;        // inner cutoff (Bohr)
    double extra_panels = 20;    // panels = n*_max + extra
    int order = 16;              // points per panel
    double tolerance = 1e-8;     // relative step-halving error bound
};

// int R_a(r) R_b(r) r^(p+2) dr. Throws NumericalError if halving the step
// changes the value by more than options.tolerance (relative to the
// Cauchy-Schwarz scale sqrt(<a|r^p|a><b|r^p|b>)).
double radial_integral(const RydbergLevel& a, const RydbergLevel& b, int p,
                       const QuantumDefectTable& defects, const RadialOptions& opt = {});

// Radial channel key, independent of m_j.
struct RadialKey {
    int n, l, two_j;
    auto operator<=>(const RadialKey&) const = default;
};

// All radial integrals between a fixed set of channels for a set of powers,
// computed as R diag(w r^(p+2)) R^T on a shared grid.
class RadialMatrixCache {
public:
    RadialMatrixCache(std::vector<RadialKey> keys, const QuantumDefectTable& defects,
                      std::vector<int> powers, const RadialOptions& opt = {}, unsigned workers = 0);

    const std::vector<RadialKey>& keys() const { return keys_; }
    int index(const RadialKey& k) const;
    bool has_power(int p) const { return mats_.count(p) != 0; }
    const MatrixXd& matrix(int p) const;
    double value(int p, const RadialKey& a, const RadialKey& b) const;
    // largest relative step-halving change observed for power p
    double error_estimate(int p) const { return errors_.at(p); }

private:
    std::vector<RadialKey> keys_;
    std::map<RadialKey, int> index_;
    std::map<int, MatrixXd> mats_;
    std::map<int, double> errors_;
};

} // namespace raimsim

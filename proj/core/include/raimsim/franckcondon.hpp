#pragma once

#include <array>
#include <string>
#include <vector>

#include "raimsim/linalg.hpp"
#include "raimsim/modes.hpp"

namespace raimsim {

// Occupations of the four modes in descending-frequency order.
struct FockLabel {
    std::array<int, 4> n{0, 0, 0, 0};

    int total() const { return n[0] + n[1] + n[2] + n[3]; }
    std::string str() const;   // "0010"
    auto operator<=>(const FockLabel&) const = default;
};

FockLabel parse_fock(const std::string& s);

class FockBasis {
public:
    // n1, n2 <= high_max on the two high modes and n3 + n4 <= bus_total on the bus modes
    static FockBasis bus_cutoff(int high_max = 1, int bus_total = 3);
    // all labels with sum n_k <= n_max
    static FockBasis total(int n_max);

    const std::vector<FockLabel>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    const FockLabel& operator[](std::size_t i) const { return labels_[i]; }
    int index(const FockLabel& f) const;   // -1 when absent
    int max_quanta(int mode) const;

private:
    std::vector<FockLabel> labels_;
};

// Product of oscillator eigenfunctions of the mode coordinates v_k . r, with r
// the mass-weighted displacement (amu^1/2 um) from the configuration's equilibrium.
double mode_wavefunction(const ModeSpectrum& spec, const FockLabel& n, const Vector4d& r);

struct OverlapOptions {
    int kick_order = 40;        // Gauss-Hermite points along the kick direction
    int transverse_order = 8;   // and along the three orthogonal directions
    bool check = true;          // repeat with both orders + 8 and compare
    double check_tol = 1e-6;
};

// S_NN' = <a, N| exp(i k zeta_l) |b, N'> with zeta_l the displacement of atom l (0 or 1)
// from the Gaussian centre. k in 1/um. The optional error is the order-doubling difference.
MatrixXcd overlap_matrix(const SystemGeometry& g, const ModeSpectrum& a, const ModeSpectrum& b,
                         const FockBasis& basis_a, const FockBasis& basis_b, int atom, double k,
                         const OverlapOptions& opt = {}, double* error = nullptr);

cplx overlap(const SystemGeometry& g, const ModeSpectrum& a, const ModeSpectrum& b, const FockLabel& na,
             const FockLabel& nb, int atom, double k, const OverlapOptions& opt = {});

// Atom whose excitation changes between the two configurations; throws unless they differ by one atom.
int kicked_atom(Config a, Config b);

struct OverlapTable {
    Config from = Config::gg;
    Config to = Config::gR;
    int atom = 0;
    double k = 0.0;
    MatrixXcd s;                 // rows: from-labels, columns: to-labels
    double quadrature_error = 0.0;
};

struct OverlapSet {
    FockBasis basis;
    std::array<ModeSpectrum, 4> spectra;   // indexed by Config
    std::vector<OverlapTable> tables;      // gg-gR, gg-Rg, gR-RR, Rg-RR

    const ModeSpectrum& spectrum(Config c) const { return spectra[static_cast<std::size_t>(c)]; }
    // table for a -> b; only the four stored directions exist
    const OverlapTable& table(Config a, Config b) const;
};

inline constexpr double default_wavenumber = 2.0 * 3.14159265358979323846 / 0.297;   // 1/um

OverlapSet build_overlap_tables(const SystemGeometry& g, double k = default_wavenumber,
                                const FockBasis& basis = FockBasis::bus_cutoff(), const OverlapOptions& opt = {});

} // namespace raimsim

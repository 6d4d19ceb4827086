#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "raimsim/atomcore.hpp"
#include "raimsim/config.hpp"
#include "raimsim/floquet.hpp"
#include "raimsim/modes.hpp"
#include "raimsim/species.hpp"

namespace raimsim::cli {

// Inclusive grid lo:hi:step, optional unit suffix ("184:186:0.01nm").
struct Range {
    double lo = 0.0, hi = 0.0, step = 0.0;
    std::vector<double> values() const;
};

Range parse_range(const std::string& text, const std::string& unit = "");

// Every setting of a run, read from the merged configuration. Defaults give
// the reference 87Rb / 9Be+ system.
struct RunConfig {
    ConfigFile cfg;

    SpeciesPair species;
    std::string defects_path;   // empty: bundled 87Rb table

    // [stark]
    int stark_n = 50;
    std::string stark_state = "P1/2";
    double rmin_nm = 1500.0, rmax_nm = 2000.0, step_nm = 2.0;
    double window_ghz = 0.0;    // <= 0: all curves

    // [trap] / [floquet]
    double q = 0.1;
    double omega_rf_mhz = 150.0;
    Waveform waveform = Waveform::Sinusoidal;
    TrapAxis axis = TrapAxis::Radial;
    int steps = 8000;
    int floquet_n = 22;
    std::string floquet_state = "P1/2";
    Range floquet_window{184.0, 186.0, 0.01};
    double energy_window_ghz = 1000.0;

    // [critmap]
    double f_lo_mhz = 1.0, f_hi_mhz = 1000.0;
    int crit_points = 200;

    SystemGeometry geometry;

    // [fock]
    int fock_high = 1, fock_bus = 3;
    double k_per_um = 0.0;

    // [dynamics]
    double omega1_mhz = 0.057;
    double omega2_mhz = 0.14;
    double tf_us = 10.0;
    double dt_us = 1e-3;
    int record_every = 10;
    double prefactor = 1.0;

    // [optimizer]
    int np = 3;
    int draws = 200;
    std::uint64_t seed = 42;

    // [scaling]
    std::vector<double> n_list{20, 25, 30, 35, 40, 45, 50};

    // [run]
    unsigned workers = 0;
    std::filesystem::path out_dir = ".";

    QuantumDefectTable defects() const;
};

// Reads and validates all sections; unknown keys are configuration errors.
RunConfig make_run_config(const ConfigFile& cfg);

// Resolves a configuration file name: as given, then under $RAIMSIM_CONFIG_DIR.
std::filesystem::path find_config_file(const std::string& name);
// $RAIMSIM_CONFIG_DIR/raimsim.cfg when present, otherwise an empty configuration.
ConfigFile default_config();

// Output path below out_dir; absolute names and names escaping out_dir are rejected.
std::filesystem::path output_path(const RunConfig& rc, const std::string& name);

} // namespace raimsim::cli

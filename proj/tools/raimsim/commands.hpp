#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace raimsim::cli {

struct StarkArgs {
    std::string out = "curves.csv";
    bool locate_well = false;
};
struct FloquetArgs {
    std::string out = "eflo.csv";
};
struct LzArgs {
    std::string out = "lz_digital.csv";
    std::string scan_out;
};
struct SimpleArgs {
    std::string out;
};
struct AntiblockadeArgs {
    std::vector<std::string> out{"antiblockade_traj.csv", "antiblockade_pulses.csv"};
};

int run_stark_map(const RunConfig& rc, const StarkArgs& a);
int run_floquet_scan(const RunConfig& rc, const FloquetArgs& a);
int run_lz_digital(const RunConfig& rc, const LzArgs& a);
int run_crit_map(const RunConfig& rc, const SimpleArgs& a);
int run_modes(const RunConfig& rc, const SimpleArgs& a);
int run_overlaps(const RunConfig& rc, const SimpleArgs& a);
int run_blockade(const RunConfig& rc, const SimpleArgs& a);
int run_antiblockade(const RunConfig& rc, const AntiblockadeArgs& a);

// Figure recipes: fig2e, fig3a, fig3b, figS3. `cfg` holds the user settings;
// the recipe fixes the parameters that define the figure.
int run_repro(const std::string& figure, ConfigFile cfg);

} // namespace raimsim::cli

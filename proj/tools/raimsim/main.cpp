#include <deque>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "raimsim/error.hpp"

using namespace raimsim;
using namespace raimsim::cli;

namespace {

// Command-line option that overrides one configuration key.
struct Binding {
    CLI::Option* option = nullptr;
    std::string section, key, value;
};

class Bindings {
public:
    void add(CLI::App* app, const std::string& flag, const std::string& section, const std::string& key,
             const std::string& help)
    {
        Binding& b = items_.emplace_back();
        b.section = section;
        b.key = key;
        b.option = app->add_option(flag, b.value, help + " [" + section + "." + key + "]");
    }

    void apply(ConfigFile& cfg) const
    {
        for (const auto& b : items_)
            if (b.option->count() > 0)
                cfg.set(b.section, b.key, b.value);
    }

private:
    std::deque<Binding> items_;
};

void add_species(Bindings& b, CLI::App* app)
{
    b.add(app, "--species", "species", "atom", "Rydberg atom species");
    b.add(app, "--ion", "species", "ion", "ion species");
    b.add(app, "--defects", "species", "defects", "quantum-defect table file");
}

void add_floquet(Bindings& b, CLI::App* app)
{
    add_species(b, app);
    b.add(app, "--q", "trap", "q", "Paul-trap stability parameter");
    b.add(app, "--omega-rf-mhz", "trap", "omega_rf_mhz", "drive frequency Omega_rf / 2pi in MHz");
    b.add(app, "--steps", "trap", "steps", "Trotter steps per period");
    b.add(app, "--orientation", "trap", "axis", "radial or axial");
    b.add(app, "--n", "floquet", "n", "principal quantum number of the well state");
    b.add(app, "--state", "floquet", "state", "well term, e.g. P1/2");
    b.add(app, "--window", "floquet", "window", "r_ci grid lo:hi:step in nm");
    b.add(app, "--energy-window-ghz", "floquet", "energy_window_ghz", "static levels kept around the well state");
}

void add_geometry(Bindings& b, CLI::App* app)
{
    b.add(app, "--omega-i-mhz", "geometry", "omega_i_mhz", "axial ion trap frequency");
    b.add(app, "--omega-t-mhz", "geometry", "omega_t_mhz", "tweezer frequency");
    b.add(app, "--omega-m-mhz", "geometry", "omega_m_mhz", "molecular vibration frequency");
    b.add(app, "--d-um", "geometry", "d_um", "atom-ion bond length in um");
}

void add_fock(Bindings& b, CLI::App* app)
{
    b.add(app, "--k-per-um", "fock", "k_per_um", "photon recoil wavenumber in 1/um");
    b.add(app, "--fock-high", "fock", "high", "quanta per high-frequency mode");
    b.add(app, "--fock-bus", "fock", "bus", "total quanta in the two bus modes");
}

void add_dynamics(Bindings& b, CLI::App* app)
{
    add_geometry(b, app);
    add_fock(b, app);
    b.add(app, "--tf-us", "dynamics", "tf_us", "protocol duration in us");
    b.add(app, "--dt-us", "dynamics", "dt_us", "integration step in us");
    b.add(app, "--record-every", "dynamics", "record_every", "steps between recorded samples");
    b.add(app, "--prefactor", "dynamics", "prefactor", "coupling prefactor multiplying Omega f(t) S");
}

// Turns "high=1,bus=3" into fock.high / fock.bus overrides.
void apply_cutoff_spec(const std::string& spec, ConfigFile& cfg)
{
    std::size_t start = 0;
    while (start < spec.size()) {
        const auto comma = spec.find(',', start);
        const std::string item = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto eq = item.find('=');
        const std::string key = eq == std::string::npos ? "" : item.substr(0, eq);
        if (key != "high" && key != "bus")
            throw ConfigError("invalid cutoff spec '" + spec + "' (expected high=<n>,bus=<n>)");
        cfg.set("fock", key, item.substr(eq + 1));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rydberg atom-ion molecule simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", RAIMSIM_VERSION);

    std::vector<std::string> config_files;
    std::string geometry_file, out_dir, workers;
    bool quiet = false;
    app.add_option("--config", config_files, "configuration file(s), merged in order");
    app.add_option("--out-dir", out_dir, "directory receiving all outputs [run.out_dir]");
    app.add_option("--workers", workers, "worker threads, 0 = all cores [run.workers]");
    app.add_flag("--quiet", quiet, "suppress warnings");

    Bindings bind;

    auto* stark = app.add_subcommand("stark-map", "potential-energy curves of one m_j sector");
    StarkArgs stark_args;
    add_species(bind, stark);
    bind.add(stark, "--n", "stark", "n", "principal quantum number");
    bind.add(stark, "--state", "stark", "state", "term of the tracked state, e.g. P1/2");
    bind.add(stark, "--rmin", "stark", "rmin_nm", "smallest r_ci in nm");
    bind.add(stark, "--rmax", "stark", "rmax_nm", "largest r_ci in nm");
    bind.add(stark, "--step", "stark", "step_nm", "grid step in nm");
    bind.add(stark, "--window-ghz", "stark", "window_ghz", "only curves within this distance of the state");
    stark->add_flag("--locate-well", stark_args.locate_well, "also locate the well and report d, omega_M");
    stark->add_option("--out", stark_args.out, "output CSV");

    auto* floquet = app.add_subcommand("floquet-scan", "E_flo along r_ci with avoided-crossing detection");
    FloquetArgs floquet_args;
    add_floquet(bind, floquet);
    bind.add(floquet, "--drive", "trap", "waveform", "sinusoidal or digital");
    floquet->add_option("--out", floquet_args.out, "output CSV");

    auto* lz = app.add_subcommand("lz-digital", "Landau-Zener shading of crossings in a digital trap");
    LzArgs lz_args;
    add_floquet(bind, lz);
    lz->add_option("--out", lz_args.out, "crossing table CSV");
    lz->add_option("--scan-out", lz_args.scan_out, "optional full E_flo scan CSV");

    auto* crit = app.add_subcommand("crit-map", "critical principal quantum numbers versus drive frequency");
    SimpleArgs crit_args{"critmap.csv"};
    bind.add(crit, "--ion", "species", "ion", "ion species");
    bind.add(crit, "--q", "trap", "q", "Paul-trap stability parameter");
    bind.add(crit, "--omega-range-mhz", "critmap", "omega_range_mhz", "frequency range lo:hi in MHz");
    bind.add(crit, "--points", "critmap", "points", "number of log-spaced frequencies");
    crit->add_option("--out", crit_args.out, "output CSV");

    auto* modes = app.add_subcommand("modes", "normal modes of the four electronic configurations");
    SimpleArgs modes_args{"modes.csv"};
    add_geometry(bind, modes);
    modes->add_option("--out", modes_args.out, "output CSV");

    auto* over = app.add_subcommand("overlaps", "Franck-Condon tables with photon recoil");
    SimpleArgs over_args{"overlaps.csv"};
    std::string cutoff_spec;
    add_geometry(bind, over);
    add_fock(bind, over);
    over->add_option("--cutoff-spec", cutoff_spec, "Fock truncation high=<n>,bus=<n>");
    over->add_option("--out", over_args.out, "output CSV");

    auto* block = app.add_subcommand("blockade", "square-pulse blockade dynamics");
    SimpleArgs block_args{"blockade.csv"};
    add_dynamics(bind, block);
    bind.add(block, "--omega1-mhz", "dynamics", "omega1_mhz", "Rabi frequency Omega_1 / 2pi in MHz");
    block->add_option("--out", block_args.out, "trajectory CSV");

    auto* anti = app.add_subcommand("antiblockade", "two-tone anti-blockade with pulse optimisation");
    AntiblockadeArgs anti_args;
    add_dynamics(bind, anti);
    bind.add(anti, "--omega1-mhz", "dynamics", "omega1_mhz", "Rabi frequency Omega_1 / 2pi in MHz");
    bind.add(anti, "--omega2-mhz", "dynamics", "omega2_mhz", "Rabi frequency Omega_2 / 2pi in MHz");
    bind.add(anti, "--np", "optimizer", "np", "CRAB frequency components per pulse");
    bind.add(anti, "--draws", "optimizer", "draws", "random parameter draws");
    bind.add(anti, "--seed", "optimizer", "seed", "master seed");
    anti->add_option("--out", anti_args.out, "trajectory CSV and pulse CSV")->expected(2);

    auto* repro = app.add_subcommand("repro", "emit the data behind a figure");
    std::string figure;
    repro->add_option("figure", figure, "fig2e, fig3a, fig3b or figS3")->required();
    bind.add(repro, "--n-list", "scaling", "n_list", "principal quantum numbers for figS3");
    bind.add(repro, "--seed", "optimizer", "seed", "master seed for fig3b");

    for (auto* sub : {modes, over, block, anti})
        sub->add_option("--geometry", geometry_file, "geometry configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (quiet)
            set_warnings_enabled(false);
        ConfigFile cfg = default_config();
        for (const auto& f : config_files)
            cfg.merge(ConfigFile::load(find_config_file(f).string()));
        if (!geometry_file.empty())
            cfg.merge(ConfigFile::load(find_config_file(geometry_file).string()));
        bind.apply(cfg);
        if (!cutoff_spec.empty())
            apply_cutoff_spec(cutoff_spec, cfg);
        if (!out_dir.empty())
            cfg.set("run", "out_dir", out_dir);
        if (!workers.empty())
            cfg.set("run", "workers", workers);

        if (*lz && !cfg.has("trap", "omega_rf_mhz"))
            cfg.set("trap", "omega_rf_mhz", "10");
        if (*repro)
            return run_repro(figure, cfg);
        const RunConfig rc = make_run_config(cfg);
        if (*stark)
            return run_stark_map(rc, stark_args);
        if (*floquet)
            return run_floquet_scan(rc, floquet_args);
        if (*lz)
            return run_lz_digital(rc, lz_args);
        if (*crit)
            return run_crit_map(rc, crit_args);
        if (*modes)
            return run_modes(rc, modes_args);
        if (*over)
            return run_overlaps(rc, over_args);
        if (*block)
            return run_blockade(rc, block_args);
        if (*anti)
            return run_antiblockade(rc, anti_args);
    } catch (const NumericalError& e) {
        std::cerr << "raimsim: numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "raimsim: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "raimsim: invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "raimsim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

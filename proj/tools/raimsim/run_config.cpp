#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "raimsim/error.hpp"
#include "raimsim/franckcondon.hpp"
#include "raimsim/units.hpp"

namespace raimsim::cli {

namespace fs = std::filesystem;

std::vector<double> Range::values() const
{
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i)
        out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

Range parse_range(const std::string& text, const std::string& unit)
{
    std::string body = text;
    if (!unit.empty() && body.size() > unit.size() && body.compare(body.size() - unit.size(), unit.size(), unit) == 0)
        body.resize(body.size() - unit.size());
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = body.find(':', start);
        const std::string item = body.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size())
            throw ConfigError("invalid range '" + text + "' (expected lo:hi[:step]" + unit + ")");
        parts.push_back(v);
        if (colon == std::string::npos)
            break;
        start = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3)
        throw ConfigError("invalid range '" + text + "' (expected lo:hi[:step]" + unit + ")");
    Range r{parts[0], parts[1], parts.size() == 3 ? parts[2] : 0.0};
    if (!(r.hi > r.lo))
        throw ConfigError("range '" + text + "' must have hi > lo");
    if (parts.size() == 3 && !(r.step > 0.0))
        throw ConfigError("range '" + text + "' must have a positive step");
    return r;
}

namespace {

void reject_unknown(const ConfigFile& cfg, const std::map<std::string, std::vector<std::string>>& known)
{
    std::string msg;
    for (const auto& s : cfg.sections()) {
        auto it = known.find(s);
        if (it == known.end()) {
            msg += "\n  unknown section [" + s + "]";
            continue;
        }
        for (const auto& k : cfg.unknown_keys(s, it->second))
            msg += "\n  " + k + ": unknown key in [" + s + "]";
    }
    if (!msg.empty())
        throw ConfigError("invalid configuration" + msg);
}

template <class T>
T positive(const ConfigFile& cfg, T v, const std::string& section, const std::string& key)
{
    if (!(v > T(0)))
        throw ConfigError(cfg.where(section, key) + section + "." + key + " must be positive");
    return v;
}

} // namespace

RunConfig make_run_config(const ConfigFile& cfg)
{
    reject_unknown(cfg, {
        {"", {}},
        {"species", {"atom", "ion", "defects"}},
        {"stark", {"n", "state", "rmin_nm", "rmax_nm", "step_nm", "window_ghz"}},
        {"trap", {"q", "omega_rf_mhz", "waveform", "axis", "steps"}},
        {"floquet", {"n", "state", "window", "energy_window_ghz"}},
        {"critmap", {"omega_range_mhz", "points"}},
        {"geometry", {"m_i_amu", "m_a_amu", "omega_i_mhz", "omega_t_mhz", "omega_m_mhz", "d_um"}},
        {"fock", {"high", "bus", "k_per_um"}},
        {"dynamics", {"omega1_mhz", "omega2_mhz", "tf_us", "dt_us", "record_every", "prefactor"}},
        {"optimizer", {"np", "draws", "seed"}},
        {"scaling", {"n_list"}},
        {"run", {"workers", "out_dir"}},
    });

    RunConfig rc;
    rc.cfg = cfg;
    rc.species = make_species_pair(cfg.get_string("species", "atom", "Rb87"), cfg.get_string("species", "ion", "Be9"));
    rc.defects_path = cfg.get_string("species", "defects", "");

    rc.stark_n = positive(cfg, cfg.get_int("stark", "n", rc.stark_n), "stark", "n");
    rc.stark_state = cfg.get_string("stark", "state", rc.stark_state);
    rc.rmin_nm = positive(cfg, cfg.get_double("stark", "rmin_nm", rc.rmin_nm), "stark", "rmin_nm");
    rc.rmax_nm = cfg.get_double("stark", "rmax_nm", rc.rmax_nm);
    rc.step_nm = positive(cfg, cfg.get_double("stark", "step_nm", rc.step_nm), "stark", "step_nm");
    rc.window_ghz = cfg.get_double("stark", "window_ghz", rc.window_ghz);
    if (!(rc.rmax_nm > rc.rmin_nm))
        throw ConfigError(cfg.where("stark", "rmax_nm") + "stark.rmax_nm must exceed stark.rmin_nm");

    rc.q = positive(cfg, cfg.get_double("trap", "q", rc.q), "trap", "q");
    rc.omega_rf_mhz = positive(cfg, cfg.get_double("trap", "omega_rf_mhz", rc.omega_rf_mhz), "trap", "omega_rf_mhz");
    rc.waveform = parse_waveform(cfg.get_string("trap", "waveform", "sinusoidal"));
    rc.axis = parse_axis(cfg.get_string("trap", "axis", "radial"));
    rc.steps = cfg.get_int("trap", "steps", rc.steps);
    if (rc.steps < 2)
        throw ConfigError(cfg.where("trap", "steps") + "trap.steps must be at least 2");
    rc.floquet_n = positive(cfg, cfg.get_int("floquet", "n", rc.floquet_n), "floquet", "n");
    rc.floquet_state = cfg.get_string("floquet", "state", rc.floquet_state);
    if (cfg.has("floquet", "window")) {
        rc.floquet_window = parse_range(cfg.get_string("floquet", "window", ""), "nm");
        if (rc.floquet_window.step <= 0.0)
            throw ConfigError(cfg.where("floquet", "window") + "floquet.window needs a step (lo:hi:step)");
    }
    rc.energy_window_ghz = cfg.get_double("floquet", "energy_window_ghz", rc.energy_window_ghz);

    if (cfg.has("critmap", "omega_range_mhz")) {
        const Range r = parse_range(cfg.get_string("critmap", "omega_range_mhz", ""));
        rc.f_lo_mhz = positive(cfg, r.lo, "critmap", "omega_range_mhz");
        rc.f_hi_mhz = r.hi;
    }
    rc.crit_points = cfg.get_int("critmap", "points", rc.crit_points);
    if (rc.crit_points < 2)
        throw ConfigError(cfg.where("critmap", "points") + "critmap.points must be at least 2");

    const SystemGeometry g0;
    rc.geometry = make_geometry(cfg.get_double("geometry", "m_i_amu", rc.species.ion_mass_amu),
                                cfg.get_double("geometry", "m_a_amu", rc.species.atom_mass_amu),
                                cfg.get_double("geometry", "omega_i_mhz", units::lab::angular_to_mhz(g0.omega_i)),
                                cfg.get_double("geometry", "omega_t_mhz", units::lab::angular_to_mhz(g0.omega_t)),
                                cfg.get_double("geometry", "omega_m_mhz", units::lab::angular_to_mhz(g0.omega_m)),
                                cfg.get_double("geometry", "d_um", g0.d));

    rc.fock_high = cfg.get_int("fock", "high", rc.fock_high);
    rc.fock_bus = cfg.get_int("fock", "bus", rc.fock_bus);
    if (rc.fock_high < 0 || rc.fock_bus < 0)
        throw ConfigError("fock cutoffs must be non-negative");
    rc.k_per_um = cfg.get_double("fock", "k_per_um", default_wavenumber);

    rc.omega1_mhz = cfg.get_double("dynamics", "omega1_mhz", rc.omega1_mhz);
    rc.omega2_mhz = cfg.get_double("dynamics", "omega2_mhz", rc.omega2_mhz);
    if (rc.omega1_mhz < 0.0 || rc.omega2_mhz < 0.0)
        throw ConfigError("Rabi frequencies must be non-negative");
    rc.tf_us = positive(cfg, cfg.get_double("dynamics", "tf_us", rc.tf_us), "dynamics", "tf_us");
    rc.dt_us = positive(cfg, cfg.get_double("dynamics", "dt_us", rc.dt_us), "dynamics", "dt_us");
    rc.record_every = positive(cfg, cfg.get_int("dynamics", "record_every", rc.record_every), "dynamics", "record_every");
    rc.prefactor = positive(cfg, cfg.get_double("dynamics", "prefactor", rc.prefactor), "dynamics", "prefactor");

    rc.np = cfg.get_int("optimizer", "np", rc.np);
    if (rc.np < 0)
        throw ConfigError(cfg.where("optimizer", "np") + "optimizer.np must be non-negative");
    rc.draws = positive(cfg, cfg.get_int("optimizer", "draws", rc.draws), "optimizer", "draws");
    rc.seed = cfg.get_uint64("optimizer", "seed", rc.seed);

    rc.n_list = cfg.get_list("scaling", "n_list", rc.n_list);
    for (double n : rc.n_list)
        if (n < 5 || n != std::floor(n))
            throw ConfigError(cfg.where("scaling", "n_list") + "scaling.n_list entries must be integers >= 5");

    const int workers = cfg.get_int("run", "workers", 0);
    if (workers < 0)
        throw ConfigError("run.workers must be non-negative");
    rc.workers = static_cast<unsigned>(workers);
    rc.out_dir = cfg.get_string("run", "out_dir", ".");
    return rc;
}

QuantumDefectTable RunConfig::defects() const
{
    if (defects_path.empty())
        return QuantumDefectTable::rb87();
    return QuantumDefectTable::load(find_config_file(defects_path).string(), species.atom);
}

fs::path find_config_file(const std::string& name)
{
    const fs::path p(name);
    if (p.is_absolute() || fs::exists(p))
        return p;
    if (const char* dir = std::getenv("RAIMSIM_CONFIG_DIR"); dir && *dir) {
        const fs::path q = fs::path(dir) / p;
        if (fs::exists(q))
            return q;
    }
    return p;
}

ConfigFile default_config()
{
    if (const char* dir = std::getenv("RAIMSIM_CONFIG_DIR"); dir && *dir) {
        const fs::path p = fs::path(dir) / "raimsim.cfg";
        if (fs::exists(p))
            return ConfigFile::load(p.string());
    }
    return {};
}

fs::path output_path(const RunConfig& rc, const std::string& name)
{
    const fs::path rel(name);
    if (name.empty())
        throw ConfigError("empty output file name");
    if (rel.is_absolute())
        throw ConfigError("output '" + name + "' must be relative to the output directory");
    const fs::path base = fs::weakly_canonical(fs::absolute(rc.out_dir));
    const fs::path full = fs::weakly_canonical(base / rel);
    const auto [b, f] = std::mismatch(base.begin(), base.end(), full.begin(), full.end());
    if (b != base.end())
        throw ConfigError("output '" + name + "' escapes the output directory " + base.string());
    fs::create_directories(full.parent_path());
    return full;
}

} // namespace raimsim::cli

#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <memory>

#include "raimsim/csv.hpp"
#include "raimsim/dynamics.hpp"
#include "raimsim/error.hpp"
#include "raimsim/scaling.hpp"
#include "raimsim/starkmap.hpp"
#include "raimsim/units.hpp"

namespace raimsim::cli {

namespace {

constexpr double two_pi = 2.0 * units::pi;

// Settings that determine the results; [run] (output directory, workers) does not.
ConfigFile physics_config(const RunConfig& rc)
{
    ConfigFile c = rc.cfg;
    c.remove_section("run");
    return c;
}

std::vector<std::string> comments(const std::string& command, const RunConfig& rc)
{
    std::vector<std::string> c{"command: " + command};
    const std::string text = physics_config(rc).canonical();
    if (!text.empty()) {
        std::string line = "config:";
        for (char ch : text)
            line += ch == '\n' ? std::string(" ") : std::string(1, ch);
        c.push_back(line);
    }
    return c;
}

CsvWriter open_csv(const RunConfig& rc, const std::string& name, std::vector<CsvColumn> cols,
                   const std::string& command)
{
    return CsvWriter(output_path(rc, name).string(), std::move(cols), physics_config(rc).hash_hex(), comments(command, rc));
}

std::shared_ptr<const MultipoleOperator> make_operator(const RunConfig& rc, int n, std::vector<int> sectors)
{
    auto basis = std::make_shared<BasisSet>(build_basis(n, std::move(sectors), rc.defects()));
    return std::make_shared<MultipoleOperator>(basis, 6, RadialOptions{}, rc.workers);
}

DynamicsOptions dynamics_options(const RunConfig& rc)
{
    DynamicsOptions d;
    d.dt = rc.dt_us;
    d.record_every = rc.record_every;
    d.prefactor = rc.prefactor;
    return d;
}

LevelScheme make_scheme(const RunConfig& rc)
{
    return build_level_scheme(
        build_overlap_tables(rc.geometry, rc.k_per_um, FockBasis::bus_cutoff(rc.fock_high, rc.fock_bus)));
}

void write_trajectory(const RunConfig& rc, const std::string& name, const Trajectory& tr, const std::string& command)
{
    auto csv = open_csv(rc, name,
                        {{"t_us", "us"}, {"pop_gg", "1"}, {"pop_gR", "1"}, {"pop_Rg", "1"}, {"pop_RR", "1"},
                         {"norm", "1"}},
                        command);
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const auto& p = tr.populations[i];
        csv << tr.t[i] << p[0] << p[1] << p[2] << p[3] << tr.norm[i];
        csv.end_row();
    }
}

void print_populations(const char* what, const std::array<double, 4>& p)
{
    std::cout << what << " gg " << format_number(p[0]) << "  gR " << format_number(p[1]) << "  Rg "
              << format_number(p[2]) << "  RR " << format_number(p[3]) << "\n";
}

std::vector<int> floquet_sectors(TrapAxis axis)
{
    return axis == TrapAxis::Radial ? std::vector<int>{1} : std::vector<int>{-3, 1, 5};
}

struct FloquetRun {
    FloquetScanResult result;
    WellDescriptor well;
};

FloquetRun floquet_run(const RunConfig& rc, Waveform waveform, int steps, const std::vector<double>& r_nm)
{
    auto op = make_operator(rc, rc.floquet_n, floquet_sectors(rc.axis));
    const std::string label = std::to_string(rc.floquet_n) + rc.floquet_state;
    FloquetRun run;
    LocateOptions lo;
    lo.vibrational_count = 0;
    lo.workers = rc.workers;
    run.well = locate_well(*op, label, rc.species.reduced_mass_amu(), lo);

    FloquetScanOptions fo;
    fo.label = label;
    fo.energy_window_ghz = rc.energy_window_ghz;
    fo.well_omega = run.well.omega;
    fo.well_mu = units::amu_to_au(rc.species.reduced_mass_amu());
    fo.workers = rc.workers;
    const TrapDrive drive = make_drive(rc.q, rc.omega_rf_mhz, waveform, rc.axis, rc.species.ion_mass_amu, steps);
    run.result = scan_eflo(*op, drive, r_nm, fo);
    return run;
}

void write_eflo(const RunConfig& rc, const std::string& name, const FloquetScanResult& res, const std::string& command)
{
    auto csv = open_csv(rc, name,
                        {{"r_ci_nm", "nm"}, {"E_flo_GHz", "GHz"}, {"overlap", "1"}, {"is_crossing", "1"},
                         {"gap_MHz", "MHz"}, {"P_LZ", "1"}},
                        command);
    std::map<std::size_t, const CrossingRecord*> at;
    for (const auto& c : res.crossings)
        at[c.index] = &c;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const auto& p = res.points[i];
        csv << p.r_nm << p.e_flo_ghz << p.overlap << (res.is_crossing[i] ? 1 : 0);
        if (auto it = at.find(i); it != at.end()) {
            csv << it->second->gap_mhz;
            if (it->second->p_lz >= 0.0)
                csv << it->second->p_lz;
            else
                csv << "";
        } else {
            csv << "" << "";
        }
        csv.end_row();
    }
}

void print_scan_summary(const FloquetRun& run)
{
    std::cout << "well " << run.well.label << ": d = " << format_number(run.well.d_nm) << " nm, omega_M/2pi = "
              << format_number(run.well.omega_mhz) << " MHz\n";
    std::cout << "points " << run.result.points.size() << ", basis dimension "
              << (run.result.points.empty() ? 0 : run.result.points.front().dimension) << ", crossings "
              << run.result.crossings.size() << ", max unitarity defect "
              << format_number(run.result.max_unitarity_defect) << "\n";
}

} // namespace

int run_stark_map(const RunConfig& rc, const StarkArgs& a)
{
    const RydbergLevel level = parse_level(std::to_string(rc.stark_n) + rc.stark_state, 1);
    auto op = make_operator(rc, rc.stark_n, {1});
    const BasisSet& basis = op->basis();
    const auto idx = basis.find(level);
    if (!idx)
        throw ConfigError("state " + level.label() + " is not in the basis");
    const double e_state = basis.energies()[static_cast<Eigen::Index>(*idx)];

    std::vector<double> r;
    for (double x = rc.rmin_nm; x <= rc.rmax_nm + 1e-9 * rc.step_nm; x += rc.step_nm)
        r.push_back(x);
    ScanOptions so;
    so.workers = rc.workers;
    const PotentialCurveSet curves = diagonalize_scan(*op, 0, r, so);
    const BasisSector& sec = basis.sector(1);

    auto csv = open_csv(rc, a.out,
                        {{"r_ci_nm", "nm"}, {"curve_index", "1"}, {"energy_GHz", "GHz"},
                         {"dominant_level_label", "-"}, {"overlap_with_previous", "1"}},
                        "stark-map");
    for (std::size_t k = 0; k < curves.points(); ++k) {
        const VectorXd& e = curves.energies[k];
        std::vector<double> prev(static_cast<std::size_t>(e.size()), 1.0);
        if (k > 0)
            for (std::size_t s = 0; s < curves.link[k - 1].size(); ++s)
                prev[static_cast<std::size_t>(curves.link[k - 1][s])] = curves.link_overlap[k - 1][s];
        for (Eigen::Index c = 0; c < e.size(); ++c) {
            if (rc.window_ghz > 0.0 && std::abs(units::energy_to_ghz(e[c] - e_state)) > rc.window_ghz)
                continue;
            const auto dom = static_cast<std::size_t>(curves.dominant[k][static_cast<std::size_t>(c)]);
            csv << curves.r_nm[k] << static_cast<int>(c) << units::energy_to_ghz(e[c] - curves.reference_energy)
                << basis.levels[sec.offset + dom].label() << prev[static_cast<std::size_t>(c)];
            csv.end_row();
        }
    }
    std::cout << "stark-map: " << curves.points() << " points x " << sec.size << " curves, " << csv.rows()
              << " rows -> " << csv.path() << "\n";

    if (a.locate_well) {
        LocateOptions lo;
        lo.workers = rc.workers;
        const WellDescriptor w = locate_well(*op, level.label(), rc.species.reduced_mass_amu(), lo);
        std::cout << "well " << w.label << ": d = " << format_number(w.d_nm) << " nm, omega_M/2pi = "
                  << format_number(w.omega_mhz) << " MHz, depth = " << format_number(w.depth_mhz) << " MHz\n";
    }
    return 0;
}

int run_floquet_scan(const RunConfig& rc, const FloquetArgs& a)
{
    const FloquetRun run = floquet_run(rc, rc.waveform, rc.steps, rc.floquet_window.values());
    write_eflo(rc, a.out, run.result, "floquet-scan");
    print_scan_summary(run);
    return 0;
}

int run_lz_digital(const RunConfig& rc, const LzArgs& a)
{
    const FloquetRun run = floquet_run(rc, Waveform::Digital, rc.steps, rc.floquet_window.values());
    auto csv = open_csv(rc, a.out,
                        {{"r_ci_nm", "nm"}, {"gap_MHz", "MHz"}, {"slope_GHz_per_nm", "GHz/nm"}, {"P_LZ", "1"},
                         {"shading", "1"}},
                        "lz-digital");
    for (const auto& c : run.result.crossings) {
        const double slope = units::energy_to_ghz(c.slope) / units::bohr_nm;
        csv << c.r_nm << c.gap_mhz << slope << c.p_lz << 1.0 - c.p_lz;
        csv.end_row();
    }
    if (!a.scan_out.empty())
        write_eflo(rc, a.scan_out, run.result, "lz-digital");
    print_scan_summary(run);
    double lo = 1.0, hi = 0.0;
    for (const auto& c : run.result.crossings) {
        lo = std::min(lo, 1.0 - c.p_lz);
        hi = std::max(hi, 1.0 - c.p_lz);
    }
    if (!run.result.crossings.empty())
        std::cout << "1 - P_LZ spans [" << format_number(lo) << ", " << format_number(hi) << "]\n";
    return 0;
}

int run_crit_map(const RunConfig& rc, const SimpleArgs& a)
{
    const auto rows = crit_map(rc.q, rc.species.ion_mass_amu, rc.f_lo_mhz, rc.f_hi_mhz, rc.crit_points);
    auto csv = open_csv(rc, a.out.empty() ? "critmap.csv" : a.out,
                        {{"omega_rf_mhz", "MHz"}, {"n_crit_rad", "1"}, {"n_crit_ax", "1"}, {"n_single_photon", "1"}},
                        "crit-map");
    for (const auto& r : rows) {
        csv << r.omega_rf_mhz << r.n_crit_rad << r.n_crit_ax << r.n_single_photon;
        csv.end_row();
    }
    std::cout << "crit-map: " << rows.size() << " frequencies -> " << csv.path() << "\n";
    return 0;
}

int run_modes(const RunConfig& rc, const SimpleArgs& a)
{
    auto csv = open_csv(rc, a.out.empty() ? "modes.csv" : a.out,
                        {{"config", "-"}, {"mode_index", "1"}, {"freq_mhz", "MHz"}, {"v1", "1"}, {"v2", "1"},
                         {"v3", "1"}, {"v4", "1"}, {"eq1", "um"}, {"eq2", "um"}, {"eq3", "um"}, {"eq4", "um"}},
                        "modes");
    for (Config c : all_configs) {
        const ModeSpectrum m = normal_modes(rc.geometry, c);
        std::cout << to_string(c) << ":";
        for (int k = 0; k < 4; ++k) {
            csv << to_string(c) << k + 1 << units::lab::angular_to_mhz(m.frequencies[k]);
            for (int j = 0; j < 4; ++j)
                csv << m.vectors(j, k);
            for (int j = 0; j < 4; ++j)
                csv << m.equilibrium[j];
            csv.end_row();
            std::cout << " " << format_number(units::lab::angular_to_mhz(m.frequencies[k]));
        }
        std::cout << " MHz\n";
    }
    return 0;
}

int run_overlaps(const RunConfig& rc, const SimpleArgs& a)
{
    const OverlapSet set =
        build_overlap_tables(rc.geometry, rc.k_per_um, FockBasis::bus_cutoff(rc.fock_high, rc.fock_bus));
    auto csv = open_csv(rc, a.out.empty() ? "overlaps.csv" : a.out,
                        {{"pair", "-"}, {"N", "-"}, {"Nprime", "-"}, {"re", "1"}, {"im", "1"}, {"abs", "1"}},
                        "overlaps");
    for (const auto& t : set.tables) {
        const std::string pair = to_string(t.from) + "-" + to_string(t.to);
        for (std::size_t i = 0; i < set.basis.size(); ++i)
            for (std::size_t j = 0; j < set.basis.size(); ++j) {
                const cplx s = t.s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                csv << pair << set.basis[i].str() << set.basis[j].str() << s.real() << s.imag() << std::abs(s);
                csv.end_row();
            }
        std::cout << pair << ": " << set.basis.size() << "x" << set.basis.size() << ", quadrature check "
                  << format_number(t.quadrature_error) << "\n";
    }
    return 0;
}

int run_blockade(const RunConfig& rc, const SimpleArgs& a)
{
    const LevelScheme s = make_scheme(rc);
    const Trajectory tr = raimsim::run_blockade(s, two_pi * rc.omega1_mhz, rc.tf_us, dynamics_options(rc));
    write_trajectory(rc, a.out.empty() ? "blockade.csv" : a.out, tr, "blockade");
    print_populations("final", tr.final_populations());
    std::cout << "max RR " << format_number(tr.max_rr) << "\n";
    return 0;
}

int run_antiblockade(const RunConfig& rc, const AntiblockadeArgs& a)
{
    if (a.out.size() != 2)
        throw ConfigError("antiblockade needs two output files: trajectory and pulses");
    const LevelScheme s = make_scheme(rc);
    AntiblockadeOptions o;
    o.omega1 = two_pi * (rc.cfg.has("dynamics", "omega1_mhz") ? rc.omega1_mhz : 0.153);
    o.omega2 = two_pi * rc.omega2_mhz;
    o.t_f = rc.tf_us;
    o.np = rc.np;
    o.draws = rc.draws;
    o.seed = rc.seed;
    o.dynamics = dynamics_options(rc);
    o.workers = rc.workers;
    const AntiblockadeResult res = optimize_antiblockade(s, o);
    write_trajectory(rc, a.out[0], res.trajectory, "antiblockade");
    auto csv = open_csv(rc, a.out[1], {{"t_us", "us"}, {"f1", "1"}, {"f2", "1"}}, "antiblockade");
    for (double t : res.trajectory.t) {
        csv << t << res.f1(t) << res.f2(t);
        csv.end_row();
    }
    std::cout << "best draw " << res.best_draw << " of " << o.draws << ", cost " << format_number(res.cost) << "\n";
    print_populations("final", res.trajectory.final_populations());
    return 0;
}

int run_repro(const std::string& figure, ConfigFile cfg)
{
    if (figure == "fig2e") {
        // Trotter artifact near the 22P1/2 well: 100 versus 8000 steps at 20 MHz
        cfg.set("trap", "q", "0.1");
        cfg.set("trap", "omega_rf_mhz", "20");
        cfg.set("trap", "waveform", "sinusoidal");
        cfg.set("trap", "axis", "radial");
        cfg.set("floquet", "n", "22");
        cfg.set("floquet", "state", "P1/2");
        cfg.set("floquet", "window", "184:186:0.01nm");
        cfg.set("floquet", "energy_window_ghz", "300");
        for (int steps : {100, 8000}) {
            cfg.set("trap", "steps", std::to_string(steps));
            const RunConfig rc = make_run_config(cfg);
            const FloquetRun run = floquet_run(rc, rc.waveform, steps, rc.floquet_window.values());
            write_eflo(rc, "fig2e_steps" + std::to_string(steps) + ".csv", run.result, "repro fig2e");
            std::cout << steps << " steps: ";
            print_scan_summary(run);
        }
        return 0;
    }
    if (figure == "fig3a") {
        cfg.set("dynamics", "omega1_mhz", "0.057");
        cfg.set("dynamics", "tf_us", "10");
        return run_blockade(make_run_config(cfg), {"fig3a_blockade.csv"});
    }
    if (figure == "fig3b") {
        cfg.set("dynamics", "omega1_mhz", "0.153");
        cfg.set("dynamics", "omega2_mhz", "0.14");
        cfg.set("dynamics", "tf_us", "10");
        cfg.set("optimizer", "np", "3");
        cfg.set("optimizer", "draws", "200");
        if (!cfg.has("optimizer", "seed"))
            cfg.set("optimizer", "seed", "42");
        return run_antiblockade(make_run_config(cfg), {{"fig3b_antiblockade.csv", "fig3b_pulses.csv"}});
    }
    if (figure == "figS3") {
        const RunConfig rc = make_run_config(cfg);
        const QuantumDefectTable defects = rc.defects();
        LocateOptions lo;
        lo.vibrational_count = 0;
        lo.workers = rc.workers;
        std::vector<ScalingSample> samples;
        auto csv = open_csv(rc, "figS3_scaling.csv",
                            {{"n", "1"}, {"d_bohr", "a0"}, {"delta_e_hartree", "E_H"}, {"z_bohr", "a0"},
                             {"rho_bohr2", "a0^2"}, {"omega_m_ghz", "GHz"}},
                            "repro figS3");
        for (double n : rc.n_list) {
            samples.push_back(scaling_sample(static_cast<int>(n), defects, rc.species.reduced_mass_amu(), lo));
            const ScalingSample& s = samples.back();
            csv << s.n << s.well.d_bohr << s.moments.delta_e << s.moments.z << s.moments.rho
                << s.well.omega_mhz * 1e-3;
            csv.end_row();
            std::cout << "n = " << s.n << " done\n";
        }
        const ScalingFits f = fit_scaling(samples);
        auto fits = open_csv(rc, "figS3_fits.csv",
                             {{"quantity", "-"}, {"prefactor", "au"}, {"exponent", "1"}, {"log_residual", "1"}},
                             "repro figS3");
        const std::pair<const char*, const PowerLawFit*> rows[] = {
            {"d", &f.d}, {"delta_e", &f.delta_e}, {"z", &f.z}, {"rho", &f.rho}, {"omega_m", &f.omega_m}};
        for (const auto& [name, fit] : rows) {
            fits << name << fit->prefactor << fit->exponent << fit->residual;
            fits.end_row();
            std::cout << name << " = " << format_number(fit->prefactor) << " n^" << format_number(fit->exponent)
                      << "\n";
        }
        return 0;
    }
    throw ConfigError("unknown figure '" + figure + "' (expected fig2e, fig3a, fig3b or figS3)");
}

} // namespace raimsim::cli

#include <benchmark/benchmark.h>

#include <memory>

#include "raimsim/atomcore.hpp"
#include "raimsim/dynamics.hpp"
#include "raimsim/floquet.hpp"
#include "raimsim/franckcondon.hpp"
#include "raimsim/modes.hpp"
#include "raimsim/starkmap.hpp"
#include "raimsim/units.hpp"

using namespace raimsim;

namespace {

const MultipoleOperator& op22()
{
    static const MultipoleOperator op(
        std::make_shared<BasisSet>(build_basis(22, std::vector<int>{1}, QuantumDefectTable::rb87())));
    return op;
}

const LevelScheme& scheme()
{
    static const LevelScheme s = build_level_scheme(build_overlap_tables(SystemGeometry{}));
    return s;
}

void BM_Wigner3j(benchmark::State& st)
{
    double acc = 0.0;
    for (auto _ : st)
        for (int tj = 1; tj <= 41; tj += 2)
            acc += wigner3j_2(tj, 2, tj + 2, 1, 0, -1);
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_Wigner3j);

void BM_StarkPoint(benchmark::State& st)
{
    const auto& op = op22();
    const double r = units::nm_to_bohr(185.0);
    for (auto _ : st)
        benchmark::DoNotOptimize(eigh(assemble_HTI_sector(op, 0, r)).eigenvalues()[0]);
    st.SetLabel("dimension " + std::to_string(op.basis().size()));
}
BENCHMARK(BM_StarkPoint)->Unit(benchmark::kMillisecond);

void BM_FloquetPoint(benchmark::State& st)
{
    const auto& op = op22();
    const PaulParts paul = paul_parts(op, TrapAxis::Radial);
    const int rank = raim_rank(op, "22P1/2");
    const TrapDrive d =
        make_drive(0.1, 20.0, Waveform::Sinusoidal, TrapAxis::Radial, 9.012, static_cast<int>(st.range(0)));
    FloquetScanOptions opt;
    opt.label = "22P1/2";
    opt.energy_window_ghz = 300.0;
    for (auto _ : st)
        benchmark::DoNotOptimize(floquet_point(op, paul, d, rank, 185.15, opt).point.overlap);
}
BENCHMARK(BM_FloquetPoint)->Arg(100)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_NormalModes(benchmark::State& st)
{
    const SystemGeometry g;
    for (auto _ : st)
        benchmark::DoNotOptimize(normal_modes(g, Config::RR).frequencies[0]);
}
BENCHMARK(BM_NormalModes);

void BM_OverlapTables(benchmark::State& st)
{
    const SystemGeometry g;
    for (auto _ : st)
        benchmark::DoNotOptimize(build_overlap_tables(g).tables.size());
}
BENCHMARK(BM_OverlapTables)->Unit(benchmark::kMillisecond);

void BM_Blockade1us(benchmark::State& st)
{
    const auto& s = scheme();
    for (auto _ : st)
        benchmark::DoNotOptimize(run_blockade(s, 2.0 * units::pi * 0.057, 1.0).max_rr);
}
BENCHMARK(BM_Blockade1us)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();

#include <filesystem>

#include <benchmark/benchmark.h>

#include "switchsim/ee_game.hpp"
#include "switchsim/photonic_model.hpp"
#include "switchsim/quantum_switch.hpp"

namespace {

const std::filesystem::path kData = SWITCHSIM_BENCH_DATA_DIR;

void BM_RunSwitch(benchmark::State &state) {
    const auto inst = switchsim::random_instance(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(switchsim::run_switch(inst));
    state.SetComplexityN(std::int64_t{1} << (state.range(0) + 1));
}
BENCHMARK(BM_RunSwitch)->DenseRange(2, 16, 2)->Complexity(benchmark::oN);

void BM_OracleCheck(benchmark::State &state) {
    const auto inst = switchsim::random_instance(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(switchsim::oracle_check(inst));
}
BENCHMARK(BM_OracleCheck)->Arg(4)->Arg(8)->Arg(12);

void BM_SimulateCounts(benchmark::State &state) {
    const auto config = switchsim::load_photonic_config(kData / "photonic_config.json", kData);
    const auto inst = switchsim::worst_case_instance(12);
    const std::uint64_t trials = 1 << 20;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            switchsim::simulate_counts(inst, config, trials, 7, static_cast<unsigned>(state.range(0))));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(BM_SimulateCounts)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_DelayDeviationMax(benchmark::State &state) {
    const auto table = switchsim::load_segment_table(kData / "fiber_segments.csv", switchsim::Party::Alice);
    for (auto _ : state) benchmark::DoNotOptimize(switchsim::delay_deviation_max(table));
}
BENCHMARK(BM_DelayDeviationMax)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "asyncdes/checks.hpp"

using namespace asyncdes;

namespace {

const Network& sample_network() {
    static const Network net = [] {
        SemanticsOptions o;
        o.sequential_sboxes = true;
        return des_network(BitDomain::Concrete, o, true);
    }();
    return net;
}

const Lts& sample_lts() {
    static const Lts l = explore_serial(sample_network(), {}).lts;
    return l;
}

void BM_ExploreSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(explore_serial(sample_network(), {}).lts.num_states());
    state.counters["states"] = static_cast<double>(sample_lts().num_states());
}

void BM_ExploreParallel(benchmark::State& state) {
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(explore_parallel(sample_network(), {}, jobs).lts.num_states());
    state.counters["states"] = static_cast<double>(sample_lts().num_states());
}

void BM_BisimulationSerial(benchmark::State& state) {
    const auto rel = static_cast<Relation>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bisimulation_serial(sample_lts(), rel).count);
}

void BM_BisimulationParallel(benchmark::State& state) {
    const auto rel = static_cast<Relation>(state.range(0));
    const int jobs = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(bisimulation_parallel(sample_lts(), rel, jobs).count);
}

}  // namespace

BENCHMARK(BM_ExploreSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExploreParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BisimulationSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BisimulationParallel)->Args({0, 4})->Args({1, 4})->Args({1, 8})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

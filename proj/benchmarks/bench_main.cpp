#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "leapsim/memsim.hpp"
#include "leapsim/prefetcher.hpp"
#include "leapsim/trace.hpp"
#include "leapsim/trend.hpp"

using namespace leapsim;

namespace {

std::vector<Delta> random_window(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Delta> w(n);
    for (auto& d : w) {
        d = static_cast<Delta>(rng() % 8) - 4;
    }
    return w;
}

void BM_majority(benchmark::State& state) {
    const auto window = random_window(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(majority(window));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_majority)->Arg(8)->Arg(32)->Arg(64);

void BM_find_trend(benchmark::State& state) {
    const std::size_t h_size = static_cast<std::size_t>(state.range(0));
    AccessHistory h(h_size);
    std::mt19937_64 rng(9);
    std::uint64_t page = 1 << 20;
    for (std::size_t i = 0; i < 4 * h_size; ++i) {
        page += rng() % 6;
        h.record(page);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_trend(h, 2));
    }
}
BENCHMARK(BM_find_trend)->Arg(8)->Arg(32)->Arg(128);

void BM_leap_on_fault(benchmark::State& state) {
    auto pf = make_prefetcher({.kind = PrefetcherKind::leap});
    std::uint64_t page = 0;
    std::uint64_t tick = 0;
    for (auto _ : state) {
        page += 10;
        benchmark::DoNotOptimize(pf->on_fault(1, page, tick++));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_leap_on_fault);

void BM_simulate_stride(benchmark::State& state) {
    const Trace t = gen_stride(1 << 16, 0, 10, 1);
    const PrefetcherConfig pf{.kind = PrefetcherKind::leap};
    const MemoryConfig mc{.capacity_resident = 1 << 14};
    const LatencyModel lat;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(t, pf, mc, lat));
    }
    state.SetItemsProcessed(state.iterations() * t.events.size());
}
BENCHMARK(BM_simulate_stride);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "subshift/analysis.hpp"
#include "subshift/fbar.hpp"

using namespace subshift;

namespace {

Seq random_word(std::size_t len, int alphabet, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(0, alphabet - 1);
    Seq w(len);
    for (auto& s : w) s = static_cast<Sym>(d(rng));
    return w;
}

void BM_LcsDp(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    Seq x = random_word(n, 4, 1), y = random_word(n, 4, 2);
    for (auto _ : state) benchmark::DoNotOptimize(lcs_dp(x, y));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsDp)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_LcsBitParallel(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    Seq x = random_word(n, 4, 1), y = random_word(n, 4, 2);
    for (auto _ : state) benchmark::DoNotOptimize(lcs_bitparallel(x, y));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsBitParallel)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_SymbolAt(benchmark::State& state) {
    WordFactory f(ParamSeq::from_list({4, 4, 4, 4}));
    auto w = f.extended(static_cast<long>(state.range(0)), 1);
    Int pos = w->length() / 3;
    for (auto _ : state) benchmark::DoNotOptimize(w->symbol_at(pos));
}
BENCHMARK(BM_SymbolAt)->DenseRange(1, 4);

void BM_Extract(benchmark::State& state) {
    WordFactory f(ParamSeq::from_list({2, 2}));
    auto w = f.cword(2);
    Int start = w->length() / 2;
    auto len = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(w->extract(start, len));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Extract)->Range(256, 65536);

void BM_DistinctWindowsHash(benchmark::State& state) {
    WordFactory f(ParamSeq::from_list({2, 2}));
    Seq scan = f.extended(2, 1)->materialize();
    auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(distinct_windows_hash(scan, n));
}
BENCHMARK(BM_DistinctWindowsHash)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

#include <random>

#include <benchmark/benchmark.h>

#include "lexmml/aligner.hpp"

using namespace lexmml;

namespace {

PhonemeInventory inventory() {
    return PhonemeInventory({"aa", "ae", "ah", "iy", "ih", "b", "d", "k", "t",
                             "s", "z", "m", "n", "l", "r", "w"});
}

BroadGroupMap groups() {
    std::map<std::string, std::string> g;
    for (const auto& v : {"aa", "ae", "ah", "iy", "ih"}) g[v] = "vowel";
    for (const auto& v : {"b", "d", "k", "t"}) g[v] = "stop";
    for (const auto& v : {"s", "z"}) g[v] = "fricative";
    for (const auto& v : {"m", "n"}) g[v] = "nasal";
    for (const auto& v : {"l", "r", "w"}) g[v] = "liquid-glide";
    return BroadGroupMap(g);
}

std::vector<std::pair<PhonemeSeq, PhonemeSeq>> random_pairs(int n, int len) {
    PhonemeInventory inv = inventory();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);
    std::vector<std::pair<PhonemeSeq, PhonemeSeq>> pairs;
    for (int i = 0; i < n; ++i) {
        PhonemeSeq a, b;
        for (int k = 0; k < len; ++k) {
            a.push_back(inv.symbols()[pick(rng)]);
            b.push_back(inv.symbols()[pick(rng)]);
        }
        pairs.emplace_back(a, b);
    }
    return pairs;
}

void BM_align(benchmark::State& state) {
    CostModel costs = class_cost_model(inventory(), groups());
    auto pairs = random_pairs(64, static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(align(a, b, costs));
    }
}
BENCHMARK(BM_align)->Arg(4)->Arg(8)->Arg(16);

void BM_estimate_confusions(benchmark::State& state) {
    CostModel costs = class_cost_model(inventory(), groups());
    auto pairs = random_pairs(static_cast<int>(state.range(0)), 5);
    PhonemeInventory inv = inventory();
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_confusions(pairs, costs, inv));
}
BENCHMARK(BM_estimate_confusions)->Arg(64)->Arg(256);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "shuffle_lab/indec.hpp"
#include "shuffle_lab/magnus.hpp"
#include "shuffle_lab/shuffle_poly.hpp"
#include "shuffle_lab/unipotent.hpp"

using namespace shuffle_lab;

static void BM_ShuffleWords(benchmark::State& state) {
    const Alphabet ab(2);
    const auto len = static_cast<std::size_t>(state.range(0));
    const Word u = ab.parse("ab").power(len / 2);
    const Word v = ab.parse("ba").power(len / 2);
    for (auto _ : state) benchmark::DoNotOptimize(shuffle_words(ab, u, v));
}
BENCHMARK(BM_ShuffleWords)->Arg(4)->Arg(8)->Arg(12);

static void BM_IndecDim(benchmark::State& state) {
    const Alphabet alph(static_cast<std::size_t>(state.range(0)));
    const auto s = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(indec_dim_mod_p(alph, s, 7));
}
BENCHMARK(BM_IndecDim)->Args({2, 6})->Args({3, 4})->Args({3, 6})->Unit(benchmark::kMillisecond);

static void BM_RadfordMatrix(benchmark::State& state) {
    const Alphabet ab(2);
    for (auto _ : state) benchmark::DoNotOptimize(radford_matrix(ab, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_RadfordMatrix)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_FullGroup(benchmark::State& state) {
    const auto s = static_cast<std::size_t>(state.range(0));
    const auto q = static_cast<std::uint64_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(full_unitriangular_group(s, q).order());
}
BENCHMARK(BM_FullGroup)->Args({2, 9})->Args({3, 5})->Args({4, 3})->Unit(benchmark::kMillisecond);

static void BM_FiltrationLemma(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_filtration_lemma(4, 2, 3).pass());
}
BENCHMARK(BM_FiltrationLemma)->Unit(benchmark::kMillisecond);

static void BM_UniMul(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto a = UniMatrix::random(static_cast<std::size_t>(state.range(0)), 25, rng);
    const auto b = UniMatrix::random(static_cast<std::size_t>(state.range(0)), 25, rng);
    for (auto _ : state) benchmark::DoNotOptimize(uni_mul(a, b));
}
BENCHMARK(BM_UniMul)->Arg(2)->Arg(4)->Arg(6);

static void BM_MagnusEval(benchmark::State& state) {
    const Alphabet ab(2);
    std::mt19937_64 rng(2);
    const auto sigma = GroupWord::random(2, rng, 20);
    const auto d = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(magnus_eval(ab, sigma, 25, d));
}
BENCHMARK(BM_MagnusEval)->Arg(2)->Arg(4)->Arg(5);

BENCHMARK_MAIN();

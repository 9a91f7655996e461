#include <benchmark/benchmark.h>

#include "sl2q/heis_verma.hpp"
#include "sl2q/imaginary_verma.hpp"

using namespace sl2q;

namespace {

Field cube_root_field() {
    ScalarConfig cfg;
    cfg.backend = Backend::Cyclotomic;
    cfg.n = 2;
    cfg.N = 3;
    cfg.M = {{0, 1}, {2, 0}};
    return Field(cfg);
}

std::vector<Scalar> central(const Field& F, long c1, long c2) { return {F.from_int(c1), F.from_int(c2)}; }

}  // namespace

static void BM_Straighten(benchmark::State& state) {
    const Field F = cube_root_field();
    std::vector<Factor> word;
    for (int i = 0; i < state.range(0); ++i) word.push_back({i % 2 ? Kind::U : Kind::W, {-1 + (i % 3), -1}});
    for (auto _ : state) {
        HeisModule H(LieAlgebra(F), central(F, 1, 0));  // fresh caches
        benchmark::DoNotOptimize(H.straighten(word));
    }
}
BENCHMARK(BM_Straighten)->DenseRange(2, 6, 2);

static void BM_EnumerateBox(benchmark::State& state) {
    const Field F = cube_root_field();
    HeisModule H(LieAlgebra(F), central(F, 1, 0));
    const SupportBox box{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
    std::size_t total = 0;
    for (auto _ : state) {
        total = 0;
        for (const auto& [d, ms] : H.enumerate_box(box)) total += ms.size();
    }
    state.counters["monomials"] = static_cast<double>(total);
}
BENCHMARK(BM_EnumerateBox)->Args({2, 2})->Args({2, 4})->Args({3, 3})->Unit(benchmark::kMillisecond);

static void BM_StringSubmodule(benchmark::State& state) {
    const Field F = cube_root_field();
    const SupportBox box{3, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        HeisModule H(LieAlgebra(F), central(F, 1, -1));
        benchmark::DoNotOptimize(H.tilde_h_components(box));
    }
}
BENCHMARK(BM_StringSubmodule)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SingularVectors(benchmark::State& state) {
    const Field F = cube_root_field();
    const SupportBox box{static_cast<int>(state.range(0)), 2};
    for (auto _ : state) {
        HeisModule H(LieAlgebra(F), central(F, 1, 0));
        const auto th = H.tilde_h_components(box);
        benchmark::DoNotOptimize(H.singular_vectors(&th, box, box.B));
    }
}
BENCHMARK(BM_SingularVectors)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_WeightSpaceDimensions(benchmark::State& state) {
    const Field F = cube_root_field();
    const Weight w{F.zero(), central(F, 1, 0), {F.zero(), F.zero()}};
    const SupportBox box{2, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        VermaModule V(LieAlgebra(F), w);
        benchmark::DoNotOptimize(V.box_dims(box));
    }
}
BENCHMARK(BM_WeightSpaceDimensions)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Factorization(benchmark::State& state) {
    const Field F = cube_root_field();
    const Weight w{F.zero(), central(F, 1, 0), {F.zero(), F.zero()}};
    for (auto _ : state) {
        VermaModule V(LieAlgebra(F), w);
        MVector gen;
        gen.emplace(MMonomial{{}, HeisMonomial{{Factor{Kind::U, {0, -1}}}}}, F.one());
        benchmark::DoNotOptimize(V.check_factorization(gen, {2, 1}));
    }
}
BENCHMARK(BM_Factorization)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

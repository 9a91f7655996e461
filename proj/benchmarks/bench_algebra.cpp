#include <benchmark/benchmark.h>

#include <random>

#include "sl2q/lattice.hpp"
#include "sl2q/lie_algebra.hpp"
#include "sl2q/qtorus.hpp"

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

Field cyclotomic(int N) {
    ScalarConfig cfg;
    cfg.backend = Backend::Cyclotomic;
    cfg.n = 3;
    cfg.N = N;
    cfg.M = {{0, 1, 2 % N}, {N - 1, 0, 1}, {(N - 2 % N) % N, N - 1, 0}};
    return Field(cfg);
}

}  // namespace

static void BM_CyclotomicMultiply(benchmark::State& state) {
    const Field F = cyclotomic(static_cast<int>(state.range(0)));
    std::mt19937 rng(1);
    std::uniform_int_distribution<long> d(0, 64);
    const Scalar x = F.root_of_unity(1) * F.from_int(d(rng)) + F.from_int(3);
    const Scalar y = F.root_of_unity(2) - F.from_int(d(rng));
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_CyclotomicMultiply)->Arg(3)->Arg(4)->Arg(6)->Arg(12);

static void BM_RadicalBasis(benchmark::State& state) {
    const Field F = cyclotomic(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(radical_basis(F, 3));
}
BENCHMARK(BM_RadicalBasis)->Arg(4)->Arg(6)->Arg(12);

static void BM_TorusMultiply(benchmark::State& state) {
    const Field F = cube_root_field();
    QuantumTorus T(F);
    TorusElement u, v;
    const int B = static_cast<int>(state.range(0));
    for (int i = -B; i <= B; ++i)
        for (int j = -B; j <= B; ++j) {
            u.add_term({i, j}, F.from_int(i + 2 * j + 1));
            v.add_term({j, i}, F.root_of_unity(i));
        }
    for (auto _ : state) benchmark::DoNotOptimize(T.multiply(u, v));
    state.SetComplexityN(static_cast<long>(u.terms().size() * v.terms().size()));
}
BENCHMARK(BM_TorusMultiply)->Arg(1)->Arg(2)->Arg(4)->Complexity();

static void BM_BracketTable(benchmark::State& state) {
    const LieAlgebra L(cube_root_field());
    const auto keys = L.keys_in_box(1);
    for (auto _ : state) {
        for (const auto& x : keys)
            for (const auto& y : keys) benchmark::DoNotOptimize(L.bracket(x, y));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(keys.size() * keys.size()));
}
BENCHMARK(BM_BracketTable);

static void BM_MatrixOracle(benchmark::State& state) {
    const Field F = cube_root_field();
    const LieAlgebra L(F);
    const AlgebraElement x(BasisKey::u({1, 0}), F.one());
    const AlgebraElement y(BasisKey::w({0, 1}), F.one());
    for (auto _ : state) benchmark::DoNotOptimize(L.matrix_bracket(x, y));
}
BENCHMARK(BM_MatrixOracle);

static void BM_AxiomSweep(benchmark::State& state) {
    const LieAlgebra L(cyclotomic(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(check_axioms(L, 1, AxiomChecks{true, true, false}));
}
BENCHMARK(BM_AxiomSweep)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

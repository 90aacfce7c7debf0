#include "obmm/bench.hpp"
#include "obmm/btr.hpp"
#include "obmm/cbmm.hpp"
#include "obmm/kernels.hpp"
#include "obmm/mapping.hpp"

#include <benchmark/benchmark.h>

namespace {

using obmm::bench::SparsityClass;

constexpr std::uint64_t kSeed = 42;

obmm::SparseMultivector input(int n, SparsityClass cls)
{
    const auto grade = cls == SparsityClass::KVectors ? std::optional<int>(n / 2) : std::nullopt;
    return obmm::bench::gen_input(n, cls, grade, kSeed);
}

template <SparsityClass Cls>
void BM_Obmm(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const obmm::Outermorphism om = obmm::bench::gen_outermorphism(n, n, kSeed);
    const obmm::BtrTree tree = obmm::build_btr(input(n, Cls));
    for (auto _ : state) {
        benchmark::DoNotOptimize(obmm::map_obmm(om, tree));
    }
}

template <SparsityClass Cls>
void BM_Cbmm(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const obmm::CbmmTable table = obmm::cbmm_build(obmm::bench::gen_outermorphism(n, n, kSeed));
    const obmm::SparseMultivector x = input(n, Cls);
    for (auto _ : state) {
        benchmark::DoNotOptimize(obmm::map_cbmm(table, x));
    }
}

void BM_CbmmBuild(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const obmm::Outermorphism om = obmm::bench::gen_outermorphism(n, n, kSeed);
    for (auto _ : state) {
        benchmark::DoNotOptimize(obmm::cbmm_build(om));
    }
}

// range(0) = m, range(1) = k; range(2) selects the table-driven path.
void BM_Kernel(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const obmm::KVector v = obmm::KVector::from_sparse(obmm::bench::gen_input(m, SparsityClass::KVectors, 1, 1), 1);
    const obmm::KVector t = obmm::KVector::from_sparse(obmm::bench::gen_input(m, SparsityClass::KVectors, k, 2), k);
    const bool tabulated = state.range(2) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tabulated ? obmm::vector_wedge_kvector_tabulated(v, t)
                                           : obmm::vector_wedge_kvector(v, t));
    }
}

}  // namespace

BENCHMARK(BM_Obmm<SparsityClass::Full>)->DenseRange(3, 10);
BENCHMARK(BM_Obmm<SparsityClass::KVectors>)->DenseRange(3, 10);
BENCHMARK(BM_Obmm<SparsityClass::Terms>)->DenseRange(3, 10);
BENCHMARK(BM_Cbmm<SparsityClass::Full>)->DenseRange(3, 10);
BENCHMARK(BM_Cbmm<SparsityClass::KVectors>)->DenseRange(3, 10);
BENCHMARK(BM_Cbmm<SparsityClass::Terms>)->DenseRange(3, 10);
BENCHMARK(BM_CbmmBuild)->DenseRange(3, 12);
BENCHMARK(BM_Kernel)->ArgsProduct({{6, 10, 12}, {1, 3, 5}, {0, 1}});

BENCHMARK_MAIN();

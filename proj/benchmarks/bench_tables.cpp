#include <benchmark/benchmark.h>

#include "schurdouble/invariants.hpp"
#include "schurdouble/linalg.hpp"
#include "schurdouble/presets.hpp"
#include "schurdouble/schur.hpp"

using namespace schurdouble;

static void BM_TableTrivial22(benchmark::State& state) {
  Presentation a = preset("trivial");
  SchurAlgebra s(a, 2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(s.build_table(SchurAlgebra::Mode::Formula));
}
BENCHMARK(BM_TableTrivial22);

static void BM_TablePqA2(benchmark::State& state) {
  Presentation a = preset("pq-a2");
  SchurAlgebra s(a, 2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(s.build_table(SchurAlgebra::Mode::Formula));
}
BENCHMARK(BM_TablePqA2);

static void BM_TableOraclePqA2(benchmark::State& state) {
  Presentation a = preset("pq-a2");
  SchurAlgebra s(a, 2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(s.build_table(SchurAlgebra::Mode::Oracle));
}
BENCHMARK(BM_TableOraclePqA2);

static void BM_Shuffle(benchmark::State& state) {
  Presentation a = preset("zigzag-a2");
  TupleSpace ts(a.basis.parity, 3);
  TensorElement x = orbit_sum(a.basis, ts.tuple(0));
  TensorElement y = orbit_sum(a.basis, ts.tuple(ts.size() / 2));
  for (auto _ : state) benchmark::DoNotOptimize(shuffle(a.basis, x, y));
}
BENCHMARK(BM_Shuffle);

static void BM_Hnf(benchmark::State& state) {
  IntMat m;
  unsigned long long seed = 12345;
  for (int i = 0; i < 40; ++i) {
    IntVec r(30);
    for (auto& v : r) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      v = static_cast<long>(seed % 17) - 8;
    }
    m.push_back(std::move(r));
  }
  for (auto _ : state) benchmark::DoNotOptimize(hnf_rows(m));
}
BENCHMARK(BM_Hnf);

#include <benchmark/benchmark.h>

#include "hgfq/charsum.hpp"
#include "hgfq/counting.hpp"
#include "hgfq/hyperf.hpp"
#include "hgfq/lfun.hpp"

using namespace hgfq;

static void BM_GaussTable(benchmark::State& st) {
  FieldPtr F = build_field(static_cast<u64>(st.range(0)), 1);
  for (auto _ : st) {
    clear_gauss_cache();
    for (u64 k = 0; k < F->order(); ++k) benchmark::DoNotOptimize(gauss(Char(F, static_cast<i64>(k))));
  }
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * F->order()));
}
BENCHMARK(BM_GaussTable)->Arg(7)->Arg(13)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);

static void BM_JacobiDirect(benchmark::State& st) {
  FieldPtr F = build_field(static_cast<u64>(st.range(0)), 1);
  std::vector<Char> cs{Char(F, 1), Char(F, 2), Char(F, 3)};
  for (auto _ : st) benchmark::DoNotOptimize(jacobi_direct(cs));
}
BENCHMARK(BM_JacobiDirect)->Arg(13)->Arg(31)->Unit(benchmark::kMillisecond);

static void BM_HyperF(benchmark::State& st) {
  FieldPtr F = build_field(static_cast<u64>(st.range(0)), 1);
  const Backend be = st.range(1) ? Backend::Modular : Backend::Exact;
  const i64 d = 4;
  const i64 step = static_cast<i64>(F->order()) / d;
  HGParams P(F, {step, 3 * step}, {0, 2 * step});
  for (auto _ : st) {
    clear_hyperf_cache();
    benchmark::DoNotOptimize(hyperF(P, F->exp(1), be));
  }
  st.SetLabel(st.range(1) ? "modular" : "exact");
}
BENCHMARK(BM_HyperF)->Args({13, 0})->Args({13, 1})->Args({101, 0})->Args({101, 1})->Args({409, 1})->Unit(benchmark::kMillisecond);

// q - 1 above the naive DFT limit exercises the NTT/Bluestein path.
static void BM_HyperFBluestein(benchmark::State& st) {
  FieldPtr F = build_field(static_cast<u64>(st.range(0)), 1);
  const i64 step = static_cast<i64>(F->order()) / 2;
  HGParams P(F, {step}, {0});
  for (auto _ : st) {
    clear_hyperf_cache();
    clear_gauss_cache();
    benchmark::DoNotOptimize(hyperF(P, F->exp(1), Backend::Modular));
  }
}
BENCHMARK(BM_HyperFBluestein)->Arg(1021)->Arg(4099)->Unit(benchmark::kMillisecond);

static void BM_OraclePlain(benchmark::State& st) {
  FieldPtr F = build_field(static_cast<u64>(st.range(0)), 1);
  Surface s = Surface::dwork(F, 3, F->exp(1));
  for (auto _ : st) {
    clear_counting_caches();
    benchmark::DoNotOptimize(oracle_count_plain(s, 1));
  }
}
BENCHMARK(BM_OraclePlain)->Arg(7)->Arg(13)->Arg(31)->Unit(benchmark::kMillisecond);

static void BM_OracleTwisted(benchmark::State& st) {
  FieldPtr F = build_field(static_cast<u64>(st.range(0)), 1);
  Surface s = Surface::dwork(F, 3, F->exp(1));
  for (auto _ : st) {
    clear_counting_caches();
    benchmark::DoNotOptimize(oracle_N_all(s, 1));
  }
}
BENCHMARK(BM_OracleTwisted)->Arg(7)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_DworkFormula(benchmark::State& st) {
  FieldPtr F = build_field(13, 1);
  Surface s = Surface::dwork(F, 4, 2);
  const unsigned r = static_cast<unsigned>(st.range(0));
  for (auto _ : st) {
    clear_counting_caches();
    clear_hyperf_cache();
    benchmark::DoNotOptimize(formula_N(s, {0, 0, 0, 0}, r, false));
  }
}
BENCHMARK(BM_DworkFormula)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_K3Zeta(benchmark::State& st) {
  FieldPtr F = build_field(13, 1);
  Surface s = Surface::dwork(F, 4, 2);
  for (auto _ : st) {
    clear_counting_caches();
    clear_hyperf_cache();
    benchmark::DoNotOptimize(zeta(s));
  }
}
BENCHMARK(BM_K3Zeta)->Iterations(1)->Unit(benchmark::kSecond);

static void BM_WeilCheck(benchmark::State& st) {
  TPoly p{Cyclo(1L), Cyclo(19L), Cyclo(247L), Cyclo(2197L)};
  for (auto _ : st) benchmark::DoNotOptimize(weil_check(p, 13, 2));
}
BENCHMARK(BM_WeilCheck)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

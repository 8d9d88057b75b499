#include <benchmark/benchmark.h>

#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/five_term.hpp"
#include "spinscreen/ninej.hpp"
#include "spinscreen/recursion.hpp"
#include "spinscreen/semiclassics.hpp"

using namespace spinscreen;

namespace {

// Integer multiples of the (60, 90, 120, 110) screen, κ = 30 k.
ScreenParams scaled(int kappa) {
  const int k = kappa / 30;
  return screen_ranges(60 * k, 90 * k, 120 * k, 110 * k);
}

void BM_Oracle(benchmark::State& st) {
  const auto p = scaled(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(screen_oracle(p));
}
BENCHMARK(BM_Oracle)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Eigensolve(benchmark::State& st) {
  const auto p = scaled(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(screen_by_eigensolve(p));
}
BENCHMARK(BM_Eigensolve)->Arg(30)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ThreeTerm(benchmark::State& st) {
  const auto p = scaled(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(screen_by_threeterm(p));
}
BENCHMARK(BM_ThreeTerm)->Arg(30)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_Recur2D(benchmark::State& st) {
  const auto p = scaled(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(screen_by_2d(p));
}
BENCHMARK(BM_Recur2D)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SixJExact(benchmark::State& st) {
  const auto p = scaled(static_cast<int>(st.range(0)));
  const auto args = p.args(p.x_at(p.side() / 2), p.y_at(p.side() / 2));
  for (auto _ : st) benchmark::DoNotOptimize(sixj_exact(args));
}
BENCHMARK(BM_SixJExact)->Arg(30)->Arg(300);

void BM_PRCompare(benchmark::State& st) {
  const auto p = scaled(300);
  const auto e = screen_by_eigensolve(p);
  for (auto _ : st) benchmark::DoNotOptimize(pr_compare(p, e));
}
BENCHMARK(BM_PRCompare)->Unit(benchmark::kMillisecond);

void BM_NineJResidual(benchmark::State& st) {
  const NineJArgs a{TwoJ(4), TwoJ(3), TwoJ(5), TwoJ(6), TwoJ(5), TwoJ(3), TwoJ(4), TwoJ(4), TwoJ(6)};
  for (auto _ : st) benchmark::DoNotOptimize(ninej_residual(a));
}
BENCHMARK(BM_NineJResidual);

}  // namespace

BENCHMARK_MAIN();

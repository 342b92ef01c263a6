#include "engel/elliptic.hpp"
#include "engel/expmap.hpp"
#include "engel/maxwell.hpp"
#include "engel/symmetry.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace engel;

namespace {

const std::vector<Stratum>& strata() {
  static const std::vector<Stratum> s = closed_form_strata();
  return s;
}

Covector sample(Stratum s) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(s) + 1);
  return sample_covector(s, rng);
}

}  // namespace

static void BM_Jacobi(benchmark::State& state) {
  const double k2 = state.range(0) / 100.0;
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi(u, k2));
    u += 0.37;
    if (u > 20.0) u -= 20.0;
  }
}
BENCHMARK(BM_Jacobi)->Arg(-300)->Arg(30)->Arg(99);

static void BM_CompleteK(benchmark::State& state) {
  double m = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(complete_K(m));
    m = m > 0.9 ? -2.0 : m + 0.013;
  }
}
BENCHMARK(BM_CompleteK);

static void BM_ExpMap(benchmark::State& state) {
  const Stratum s = strata()[state.range(0)];
  const Covector l = sample(s);
  const double t = std::min(2.0, 0.8 * t_supr(l));
  for (auto _ : state) benchmark::DoNotOptimize(exp_map(l, t));
  state.SetLabel(to_string(s));
}
BENCHMARK(BM_ExpMap)->DenseRange(0, 10);

static void BM_Rectify(benchmark::State& state) {
  const Covector l = sample(Stratum::TL_Cplus);
  for (auto _ : state) benchmark::DoNotOptimize(rectify(l));
}
BENCHMARK(BM_Rectify);

static void BM_Integrate(benchmark::State& state) {
  const Covector l = sample(Stratum::SL_C1);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(l, 2.0, steps));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Integrate)->Arg(1000)->Arg(10000);

static void BM_Commutation(benchmark::State& state) {
  const Covector l = sample(Stratum::SL_C3);
  for (auto _ : state) benchmark::DoNotOptimize(check_commutation(3, l, 1.0));
}
BENCHMARK(BM_Commutation);

static void BM_MaxwellTimes(benchmark::State& state) {
  const Covector l = sample(state.range(0) ? Stratum::SL_C1 : Stratum::TL_Cplus);
  for (auto _ : state) benchmark::DoNotOptimize(maxwell_times(l));
}
BENCHMARK(BM_MaxwellTimes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

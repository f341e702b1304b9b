#include <benchmark/benchmark.h>

#include <barbill/pentagram.hpp>

using namespace barbill;

namespace {

TangentMap six_map() { return TangentMap(ConvexBody::triangle(Triangle({0, 0.9}, {0, -0.9}, {-0.02, 0}))); }

void BM_Evaluate(benchmark::State& state) {
  const TangentMap m = six_map();
  double x = 0.123;
  for (auto _ : state) {
    x = m.evaluate(IdealPoint::from_turns(x)).turns();
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Evaluate);

void BM_EstimateRho(benchmark::State& state) {
  const TangentMap m = six_map();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_rho(m, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateRho)->Arg(1000)->Arg(100000);

void BM_CertifyRational(benchmark::State& state) {
  const TangentMap m = six_map();
  for (auto _ : state) benchmark::DoNotOptimize(certify_rational(m, 2, 5));
}
BENCHMARK(BM_CertifyRational)->Unit(benchmark::kMillisecond);

void BM_DetectPeriod5(benchmark::State& state) {
  const TangentMap m = six_map();
  for (auto _ : state) benchmark::DoNotOptimize(detect_period5(m));
}
BENCHMARK(BM_DetectPeriod5)->Unit(benchmark::kMillisecond);

void BM_ClassifyRho(benchmark::State& state) {
  const TangentMap m = six_map();
  for (auto _ : state) benchmark::DoNotOptimize(classify_rho(m));
}
BENCHMARK(BM_ClassifyRho)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

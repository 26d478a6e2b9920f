#include <benchmark/benchmark.h>

#include "rellich/constants.hpp"
#include "rellich/extremals.hpp"
#include "rellich/fem.hpp"
#include "rellich/harmonics.hpp"
#include "rellich/laurent.hpp"
#include "rellich/mellin.hpp"

using namespace rellich;

static void BM_WeightedIntegrate(benchmark::State& state) {
  WeightedQuadrature quad;
  for (auto _ : state) {
    double v = integrate([](double r) { return std::cos(3.0 * r); }, -1.0, 3.0, quad);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_WeightedIntegrate);

static void BM_BilapForm(benchmark::State& state) {
  WeightedQuadrature quad;
  auto f = poly_bump(2, {1.0, -0.5, 0.25});
  auto m = mode(5, 1);
  for (auto _ : state) {
    double v = bilap_form(m, f, quad);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_BilapForm);

static void BM_CertifySymbol(benchmark::State& state) {
  WeightedQuadrature quad;
  for (auto _ : state) {
    double v = certify_symbol({3, 1, 0.5}, state.range(0), quad);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CertifySymbol)->Arg(20)->Arg(40);

static void BM_IdentitySuite(benchmark::State& state) {
  for (auto _ : state) {
    auto v = identity_suite(state.range(0));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_IdentitySuite)->Arg(5)->Arg(12);

static void BM_FemAssemble(benchmark::State& state) {
  auto mesh = make_graded_mesh(std::exp(-200.0), state.range(0));
  auto m = mode(3, 1);
  for (auto _ : state) {
    auto pair = assemble(m, FormKind::bilap, FormKind::gradhardy, mesh);
    benchmark::DoNotOptimize(pair.A.data());
  }
}
BENCHMARK(BM_FemAssemble)->Arg(100)->Arg(400);

static void BM_FemEigensolve(benchmark::State& state) {
  auto mesh = make_graded_mesh(std::exp(-200.0), state.range(0));
  auto pair = assemble(mode(3, 1), FormKind::bilap, FormKind::gradhardy, mesh);
  for (auto _ : state) {
    auto mq = min_quotient(pair);
    benchmark::DoNotOptimize(mq.lambda_min);
  }
}
BENCHMARK(BM_FemEigensolve)->Arg(100)->Arg(240)->Unit(benchmark::kMillisecond);

static void BM_OptimalitySweep(benchmark::State& state) {
  for (auto _ : state) {
    auto tr = optimality_sweep(3.5);
    benchmark::DoNotOptimize(tr.collapse_factor);
  }
}
BENCHMARK(BM_OptimalitySweep)->Unit(benchmark::kMillisecond);

static void BM_BubbleQuotient(benchmark::State& state) {
  BubbleParams p;
  p.n = 5;
  p.lambda = 1e3;
  p.rho = 0.05;
  for (auto _ : state) {
    auto q = bubble_quotient(p);
    benchmark::DoNotOptimize(q.lower);
  }
}
BENCHMARK(BM_BubbleQuotient)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

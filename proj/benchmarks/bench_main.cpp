#include <benchmark/benchmark.h>

#include "uwq/expansion.hpp"
#include "uwq/gaussconv.hpp"
#include "uwq/quant.hpp"
#include "uwq/stft.hpp"
#include "uwq/weights.hpp"

namespace {

uwq::FunctionGrid window(const uwq::AxisGrid& g) {
  const double y[1] = {0.5}, eta[1] = {1.0};
  return uwq::gaussian_window(g, y, eta);
}

void BM_Stft(benchmark::State& state) {
  const uwq::AxisGrid g(static_cast<int>(state.range(0)), 10.0);
  const auto u = window(g);
  for (auto _ : state) benchmark::DoNotOptimize(uwq::stft(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Stft)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void BM_StftRoundTrip(benchmark::State& state) {
  const uwq::AxisGrid g(static_cast<int>(state.range(0)), 10.0);
  const auto u = window(g);
  for (auto _ : state) benchmark::DoNotOptimize(uwq::stft_adjoint(uwq::stft(u)));
}
BENCHMARK(BM_StftRoundTrip)->Arg(64)->Arg(128);

void BM_WeylPoly(benchmark::State& state) {
  const uwq::AxisGrid g(static_cast<int>(state.range(0)), 10.0);
  const auto x = uwq::PolySymbol::x(1), xi = uwq::PolySymbol::xi(1);
  const auto a = x * x + xi * xi;
  for (auto _ : state) benchmark::DoNotOptimize(uwq::weyl(a, g));
}
BENCHMARK(BM_WeylPoly)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_KernelFromGridSymbol(benchmark::State& state) {
  const uwq::AxisGrid g(static_cast<int>(state.range(0)), 10.0);
  const auto a = (uwq::PolySymbol::x(1) * uwq::PolySymbol::xi(1)).sample(g);
  for (auto _ : state) benchmark::DoNotOptimize(uwq::kernel_from_symbol(a, uwq::Tau(0.25)));
}
BENCHMARK(BM_KernelFromGridSymbol)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_AntiWickMatrix(benchmark::State& state) {
  const uwq::AxisGrid g(static_cast<int>(state.range(0)), 10.0);
  const auto x = uwq::PolySymbol::x(1), xi = uwq::PolySymbol::xi(1);
  const auto a = (x * x + xi * xi).sample(g);
  for (auto _ : state) benchmark::DoNotOptimize(uwq::anti_wick_matrix(a));
}
BENCHMARK(BM_AntiWickMatrix)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_AwToWeylTerms(benchmark::State& state) {
  const auto x = uwq::PolySymbol::x(1), xi = uwq::PolySymbol::xi(1);
  uwq::PolySymbol a = uwq::PolySymbol::constant(1, 1.0);
  for (int i = 0; i < state.range(0); ++i) a = a * (x + xi);
  for (auto _ : state) benchmark::DoNotOptimize(uwq::aw_to_weyl_terms(a, static_cast<int>(state.range(0)) / 2));
}
BENCHMARK(BM_AwToWeylTerms)->DenseRange(2, 8, 2);

void BM_AssocFn(benchmark::State& state) {
  const auto w = uwq::WeightSequence::gevrey(2.0);
  double rho = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(uwq::assoc_fn(w, rho));
    rho = rho < 1e6 ? rho * 1.5 : 1.0;
  }
}
BENCHMARK(BM_AssocFn);

void BM_GaussConvViaLaplace(benchmark::State& state) {
  const auto S = uwq::CompactDensity::bump(-1.0, 1.0);
  const double x[1] = {0.75};
  for (auto _ : state) benchmark::DoNotOptimize(uwq::conv_gauss_via_laplace(S, -1.0, x));
}
BENCHMARK(BM_GaussConvViaLaplace);

}  // namespace

BENCHMARK_MAIN();

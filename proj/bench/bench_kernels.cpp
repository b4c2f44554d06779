// Serial vs OpenMP Monte-Carlo kernels, and closed form vs quadrature.

#include <benchmark/benchmark.h>

#include <cmath>

#include "abxs/metrics.hpp"
#include "abxs/montecarlo.hpp"

using namespace abxs;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

const Channel& fig2_channel() {
  static const Channel ch({1.2, 1.2, db(1), db(1), 3.0, db(20)});
  return ch;
}

const ModulationScheme& qam16() {
  static const ModulationScheme m = parse_modulation("qam16");
  return m;
}

mc::SimulationConfig config(std::int64_t trials, int threads) {
  mc::SimulationConfig c;
  c.seed = 1;
  c.trials = trials;
  c.streams = 64;
  c.threads = threads;
  return c;
}

void BM_McAberSerial(benchmark::State& state) {
  const auto cfg = config(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mc::serial::mc_aber(fig2_channel(), qam16(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McAberParallel(benchmark::State& state) {
  const auto cfg = config(state.range(0), 0);
  for (auto _ : state) benchmark::DoNotOptimize(mc::mc_aber(fig2_channel(), qam16(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McCapacitySerial(benchmark::State& state) {
  const auto cfg = config(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mc::serial::mc_capacity(fig2_channel(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McCapacityParallel(benchmark::State& state) {
  const auto cfg = config(state.range(0), 0);
  for (auto _ : state) benchmark::DoNotOptimize(mc::mc_capacity(fig2_channel(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AberClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aber_exact(fig2_channel(), qam16()));
}

void BM_AberQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aber_quadrature(fig2_channel(), qam16()));
}

// 1% accuracy, the settings of `abxs benchmark`.
ExactOptions fast_exact() {
  ExactOptions o;
  o.series = {1e-3, 64};
  return o;
}

void BM_AberClosedFormFast(benchmark::State& state) {
  const Channel ch({state.range(0) / 2.0, state.range(0) / 2.0, 1.0, 1.0, 2.0, db(20)});
  for (auto _ : state) benchmark::DoNotOptimize(aber_exact(ch, qam16(), fast_exact()));
}

void BM_AberQuadratureFast(benchmark::State& state) {
  const Channel ch({state.range(0) / 2.0, state.range(0) / 2.0, 1.0, 1.0, 2.0, db(20)});
  for (auto _ : state) benchmark::DoNotOptimize(aber_quadrature(ch, qam16(), {0.0, 1e-3, 4000}));
}

void BM_CapacityClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(capacity_exact(fig2_channel()));
}

void BM_CapacityQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(capacity_quadrature(fig2_channel()));
}

}  // namespace

BENCHMARK(BM_McAberSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McAberParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McCapacitySerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McCapacityParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AberClosedForm)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AberQuadrature)->Unit(benchmark::kMicrosecond);
// Argument is 2 m_x: 2 gives m = 1, 1 gives m = 0.5.
BENCHMARK(BM_AberClosedFormFast)->Arg(2)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AberQuadratureFast)->Arg(2)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CapacityClosedForm)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CapacityQuadrature)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

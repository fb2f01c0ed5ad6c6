#include <benchmark/benchmark.h>

#include "triboltz/dsmc.hpp"
#include "triboltz/harness.hpp"
#include "triboltz/kinematics.hpp"
#include "triboltz/povzner.hpp"
#include "triboltz/random.hpp"
#include "triboltz/weakform.hpp"

using namespace triboltz;

static void BM_TernaryCollide(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng r = substream(1, 0, 0);
  const Vec v = uniform_sphere<kMaxDim>(r, d), v1 = uniform_sphere<kMaxDim>(r, d) * 2.0;
  const Vec v2 = uniform_sphere<kMaxDim>(r, d) * 0.5;
  const Vec2 w = uniform_sphere<kMaxStack>(r, 2 * d);
  for (auto _ : state) benchmark::DoNotOptimize(ternary_collide(v, v1, v2, w));
}
BENCHMARK(BM_TernaryCollide)->Arg(2)->Arg(3);

static void BM_GainAverageTernary(benchmark::State& state) {
  const KernelConfig k;
  const TernaryGainRule rule = make_ternary_gain_rule(k, 32, 48);
  Rng r = substream(2, 0, 0);
  const Vec2 uBar = ellipsoid_chart(uniform_sphere<kMaxStack>(r, 4));
  const Vec e{1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(gain_average_ternary(6.0, 0.4, 1.0, uBar, e, k, rule));
  state.counters["nodes"] = rule.count();
}
BENCHMARK(BM_GainAverageTernary);

static void BM_WeakForm(benchmark::State& state) {
  const KernelConfig k;
  const Ensemble e = gaussian_ensemble(2, 10000, 1.0, 3);
  Budget b;
  b.pairs = b.triples = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(weakform_estimate(e, TestFunction::poly(4.0), k, b, ++seed));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_WeakForm)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_DsmcStep(benchmark::State& state) {
  SimConfig sc;
  sc.N = static_cast<int>(state.range(0));
  sc.dt = 0.01;
  Simulator sim(sc);
  long events = 0;
  for (auto _ : state) {
    const StepStats s = sim.step();
    events += s.binaryAccepted + s.ternaryAccepted;
  }
  state.SetItemsProcessed(events);
}
BENCHMARK(BM_DsmcStep)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

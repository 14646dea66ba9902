// Serial reference vs OpenMP kernel for each data-parallel sweep.

#include <benchmark/benchmark.h>

#include "copycat/bayes.hpp"
#include "copycat/goi.hpp"
#include "copycat/probe.hpp"

using namespace copycat;

namespace {

// B x y z against x (y z) with composite arguments, a mid-sized instance.
struct ProbeCase {
  Element lhs, rhs;
  std::vector<Position> probes;
};

ProbeCase make_case() {
  auto B = lca_combinator(Combinator::B), C = lca_combinator(Combinator::C), K = lca_combinator(Combinator::K);
  Element x = app(C, K), y = B, z = C;
  return {app(app(app(B, x), y), z), app(x, app(y, z)), probe_tokens(5, 4)};
}

const ProbeCase& probe_case() {
  static const ProbeCase c = make_case();
  return c;
}

void BM_ProbeSerial(benchmark::State& st) {
  const auto& c = probe_case();
  for (auto _ : st) benchmark::DoNotOptimize(probe_equiv_serial(c.lhs, c.rhs, c.probes, 10'000));
  st.SetItemsProcessed(st.iterations() * c.probes.size());
}

void BM_ProbeParallel(benchmark::State& st) {
  const auto& c = probe_case();
  for (auto _ : st) benchmark::DoNotOptimize(probe_equiv(c.lhs, c.rhs, c.probes, 10'000));
  st.SetItemsProcessed(st.iterations() * c.probes.size());
}

void BM_SweepSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(bayes::property_sweep_serial(st.range(0), 5000, 1));
  st.SetItemsProcessed(st.iterations() * 5000);
}

void BM_SweepParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(bayes::property_sweep(st.range(0), 5000, 1));
  st.SetItemsProcessed(st.iterations() * 5000);
}

void BM_GridSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(bayes::irreducible_grid_check_serial({0, 1}, 64));
}

void BM_GridParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(bayes::irreducible_grid_check({0, 1}, 64));
}

}  // namespace

BENCHMARK(BM_ProbeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProbeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

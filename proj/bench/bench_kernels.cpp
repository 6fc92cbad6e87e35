// Serial reference against the OpenMP kernel, and the full dimension pipeline.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "bdim/kernels.hpp"
#include "bdim/pressure.hpp"

using namespace bdim;

namespace {

BilliardTable side6() {
  std::vector<CurveFamily> obs;
  const double r = 6.0 / std::sqrt(3.0);
  for (int k = 0; k < 3; ++k) {
    const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * k / 3;
    obs.push_back(CurveFamily::circle({r * std::cos(a)}, {r * std::sin(a), 0.0}, {1.0, 0.5}));
  }
  return BilliardTable(std::move(obs), {-0.1, 0.1}, true);
}

std::vector<CyclicWord> words(int n) {
  std::vector<CyclicWord> out;
  for (int len = 2; len <= n; ++len) {
    for (auto& w : enumerate_cyclic_words(3, len)) out.push_back(w);
  }
  return out;
}

void solve(benchmark::State& state, Execution ex) {
  const TableAt at = side6().at(0.0);
  const auto ws = words(static_cast<int>(state.range(0)));
  SolveOptions opt;
  opt.execution = ex;
  for (auto _ : state) benchmark::DoNotOptimize(solve_records(at, ws, opt));
  state.SetItemsProcessed(state.iterations() * ws.size());
}

void BM_SolveSerial(benchmark::State& s) { solve(s, Execution::serial); }
void BM_SolveParallel(benchmark::State& s) { solve(s, Execution::parallel); }

void BM_DimensionReport(benchmark::State& state) {
  const BilliardTable t = side6();
  DimensionOptions opt;
  opt.depth = static_cast<int>(state.range(0));
  opt.solve.execution = state.range(1) ? Execution::parallel : Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(dimension_report(t, 0.0, opt).D);
}

void BM_TransferPressure(benchmark::State& state) {
  ConstantPotential c(3, 0.8);
  TransferMatrix tm(c, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tm.evaluate(0.3).value);
}

}  // namespace

BENCHMARK(BM_SolveSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveParallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DimensionReport)->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransferPressure)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

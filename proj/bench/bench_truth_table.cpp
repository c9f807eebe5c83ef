// Truth-table kernels: serial reference against the bit-sliced and OpenMP
// engines, on formulas that mention every atom.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "pdm/truth_table.hpp"

using namespace pdm;

namespace {

std::vector<std::string> atoms(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

// /\_i ((X_i -> X_{i+1}) \/ ~X_{7i mod n}); satisfiable, not valid.
Formula chain(const std::vector<std::string>& xs) {
  int n = static_cast<int>(xs.size());
  Formula f = Formula::implies(Formula::falsum(), Formula::falsum());
  for (int i = 0; i < n; ++i) {
    Formula step = Formula::implies(Formula::atom(xs[i]), Formula::atom(xs[(i + 1) % n]));
    Formula neg = Formula::implies(Formula::atom(xs[(7 * i) % n]), Formula::falsum());
    f = Formula::conj(f, Formula::disj(step, neg));
  }
  return f;
}

template <tt::Engine E>
void CountModels(benchmark::State& state) {
  auto xs = atoms(static_cast<int>(state.range(0)));
  Formula f = chain(xs);
  for (auto _ : state) benchmark::DoNotOptimize(tt::count_models(f, xs, E));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

// A valid sequent: the search visits every valuation.
template <tt::Engine E>
void NoCountermodel(benchmark::State& state) {
  auto xs = atoms(static_cast<int>(state.range(0)));
  Formula f = chain(xs);
  for (auto _ : state) benchmark::DoNotOptimize(tt::first_countermodel({f}, {Formula::disj(f, f)}, E));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

}  // namespace

BENCHMARK(CountModels<tt::Engine::Serial>)->Name("CountModels/Serial")->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(CountModels<tt::Engine::BitSliced>)->Name("CountModels/BitSliced")->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(CountModels<tt::Engine::Parallel>)->Name("CountModels/Parallel")->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(NoCountermodel<tt::Engine::Serial>)->Name("NoCountermodel/Serial")->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(NoCountermodel<tt::Engine::BitSliced>)->Name("NoCountermodel/BitSliced")->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(NoCountermodel<tt::Engine::Parallel>)->Name("NoCountermodel/Parallel")->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

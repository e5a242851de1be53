// Serial versus OpenMP sparse products on dense-ish multivariate series.

#include <cobord/fgl.hpp>
#include <cobord/series.hpp>
#include <cobord/series_kernels.hpp>

#include <benchmark/benchmark.h>

using namespace cobord;

namespace {

struct Operands {
  TheorySpec theory;
  std::vector<SeriesTerm> a, b;
};

// P(z, x_1) ... P(z, x_k) style operands in the universal theory.
Operands make_operands(int roots, int trunc) {
  const TheorySpec th = make_theory(TheoryKind::UniversalRational, trunc);
  const FormalGroupLaw fgl = build_fgl(th);
  std::vector<std::string> names{"z"};
  for (int i = 1; i <= roots; ++i) names.push_back("x" + std::to_string(i));
  const AlphabetPtr alph = Alphabet::of(names);
  const GradedSeries z = GradedSeries::variable(th, alph, "z");
  GradedSeries left = GradedSeries::constant(th, alph, Rational(1));
  GradedSeries right = left;
  for (int i = 1; i <= roots; ++i) {
    const GradedSeries p = fgl.p_of(z, GradedSeries::variable(th, alph, "x" + std::to_string(i)));
    if (i % 2)
      left = left * p;
    else
      right = right * p;
  }
  return Operands{th, left.terms(), right.terms()};
}

void BM_MultiplySerial(benchmark::State& state) {
  const Operands ops = make_operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const kernels::ProductSpec spec{&ops.theory, no_caps()};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_serial(ops.a, ops.b, spec));
  state.counters["pairs"] = static_cast<double>(ops.a.size() * ops.b.size());
}

void BM_MultiplyParallel(benchmark::State& state) {
  const Operands ops = make_operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const kernels::ProductSpec spec{&ops.theory, no_caps()};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_parallel(ops.a, ops.b, spec));
  state.counters["pairs"] = static_cast<double>(ops.a.size() * ops.b.size());
}

}  // namespace

BENCHMARK(BM_MultiplySerial)->Args({2, 6})->Args({4, 5})->Args({4, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyParallel)->Args({2, 6})->Args({4, 5})->Args({4, 6})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

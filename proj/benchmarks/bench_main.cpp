#include <benchmark/benchmark.h>

#include <random>

#include "g0wb/braid.hpp"
#include "g0wb/corpus.hpp"
#include "g0wb/hauptmodul.hpp"
#include "g0wb/modeq.hpp"
#include "g0wb/numeric.hpp"

using namespace g0wb;

namespace {

const PuiseuxSeries& j_series() {
  static const std::vector<CorpusEntry> corpus = load_corpus(G0WB_BENCH_DATA_DIR);
  return find_entry(corpus, "J").series;
}

void BM_SeriesMultiply(benchmark::State& state) {
  const PuiseuxSeries j = j_series().truncated(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(j * j);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMultiply)->RangeMultiplier(2)->Range(8, 60)->Complexity();

void BM_CyclotomicMultiply(benchmark::State& state) {
  const auto n = state.range(0);
  CyclotomicNumber a(1L), b(2L);
  for (std::int64_t e = 1; e < n; e += 2) {
    a += CyclotomicNumber::root_of_unity(n, e) * CyclotomicNumber(e);
    b += CyclotomicNumber::root_of_unity(n, e + 1) * CyclotomicNumber(-e);
  }
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicMultiply)->Arg(3)->Arg(24)->Arg(120);

void BM_BuildModularPolynomial(benchmark::State& state) {
  const auto m = state.range(0);
  const PuiseuxSeries& j = j_series();
  for (auto _ : state) benchmark::DoNotOptimize(build_modular_polynomial(j, m));
}
BENCHMARK(BM_BuildModularPolynomial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const PuiseuxSeries& j = j_series();
  const ModularPolynomial f = build_modular_polynomial(j, 2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_modular_equation(j, f, 2));
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& state) {
  const PuiseuxSeries& j = j_series();
  const ModularPolynomial f = build_modular_polynomial(j, 2);
  const PuiseuxSeries seed = j.truncated(3);
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_extend(seed, f, 2, state.range(0)));
}
BENCHMARK(BM_Bootstrap)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_EtaEval(benchmark::State& state) {
  const UpperHalfPoint tau(0.1, 1.1);
  const int terms = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eta_eval(tau, terms));
}
BENCHMARK(BM_EtaEval)->Arg(50)->Arg(400);

void BM_EisensteinEval(benchmark::State& state) {
  const UpperHalfPoint tau(0.1, 1.1);
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eisenstein_eval(4, tau, radius));
}
BENCHMARK(BM_EisensteinEval)->Arg(50)->Arg(200);

void BM_ExtendedMul(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<ExtendedElement> xs;
  for (int i = 0; i < 64; ++i) {
    std::string w;
    for (int k = 0; k < 12; ++k) w += std::string(rng() % 2 ? "s1" : "s2") + (rng() % 2 ? "^-1 " : " ");
    xs.push_back(lift_braid(BraidWord::parse(w)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extended_mul(xs[i % 64], xs[(i + 7) % 64]));
    ++i;
  }
}
BENCHMARK(BM_ExtendedMul);

}  // namespace

BENCHMARK_MAIN();

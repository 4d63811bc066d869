#include "graphcalc/calculus.hpp"
#include "graphcalc/corpus.hpp"
#include "graphcalc/curvature.hpp"
#include "graphcalc/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace graphcalc;

namespace {

WeightedGraph make_graph(int n) {
  std::mt19937_64 rng(7);
  return random_connected_graph(n, rng);
}

void BM_Laplacian(benchmark::State& state) {
  const WeightedGraph g = make_graph(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const VertexFunction u = random_function(g.size(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(g, u));
}
BENCHMARK(BM_Laplacian)->Arg(16)->Arg(64)->Arg(256);

void BM_Gamma2Expanded(benchmark::State& state) {
  const WeightedGraph g = make_graph(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(2);
  const VertexFunction u = random_function(g.size(), rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(gamma2(g, u, Gamma2Form::Expanded));
}
BENCHMARK(BM_Gamma2Expanded)->Arg(16)->Arg(64);

void BM_Spectrum(benchmark::State& state) {
  const WeightedGraph g = make_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(g));
}
BENCHMARK(BM_Spectrum)->Arg(16)->Arg(64)->Arg(128);

void BM_VerifyCD(benchmark::State& state) {
  const WeightedGraph g = make_graph(static_cast<int>(state.range(0)));
  const auto ly = lin_yau_certificate(g);
  for (auto _ : state) benchmark::DoNotOptimize(verify_cd(g, ly.m, ly.xi));
}
BENCHMARK(BM_VerifyCD)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();

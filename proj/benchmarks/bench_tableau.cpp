#include <benchmark/benchmark.h>

#include <random>

#include "stabnet/entropy.hpp"
#include "stabnet/tableau.hpp"

namespace {

using namespace stabnet;

void BM_SampleUniform(benchmark::State& state) {
  uint32_t p = uint32_t(state.range(0));
  size_t n = size_t(state.range(1));
  std::mt19937_64 rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(sample_uniform(n, p, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleUniform)
    ->Args({2, 6})
    ->Args({2, 18})
    ->Args({3, 6})
    ->Args({5, 12});

void BM_Canonicalize(benchmark::State& state) {
  std::mt19937_64 rng(8);
  Tableau t = sample_uniform(size_t(state.range(0)), 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(t));
}
BENCHMARK(BM_Canonicalize)->Arg(8)->Arg(24);

void BM_Postselect(benchmark::State& state) {
  std::mt19937_64 rng(9);
  size_t n = size_t(state.range(0));
  Tableau t = sample_uniform(n, 3, rng);
  std::uniform_int_distribution<uint32_t> d(0, 2);
  std::vector<uint32_t> x(n), z(n);
  for (auto& v : x) v = d(rng);
  for (auto& v : z) v = d(rng);
  WeylOp g = WeylOp::make(3, x, z, 0);
  for (auto _ : state) benchmark::DoNotOptimize(postselect(t, g));
}
BENCHMARK(BM_Postselect)->Arg(12)->Arg(36);

void BM_PtMoment3(benchmark::State& state) {
  std::mt19937_64 rng(10);
  size_t n = size_t(state.range(0));
  Tableau t = sample_uniform(n, 3, rng);
  std::vector<size_t> a, b;
  for (size_t q = 0; q < n / 2; ++q) a.push_back(q);
  for (size_t q = n / 2; q < n; ++q) b.push_back(q);
  for (auto _ : state) benchmark::DoNotOptimize(pt_moment3(t, a, b));
}
BENCHMARK(BM_PtMoment3)->Arg(8)->Arg(16)->Arg(32);

void BM_PtMoment3Enumerated(benchmark::State& state) {
  std::mt19937_64 rng(10);
  size_t n = size_t(state.range(0));
  Tableau t = sample_uniform(n, 3, rng);
  std::vector<size_t> a, b;
  for (size_t q = 0; q < n / 2; ++q) a.push_back(q);
  for (size_t q = n / 2; q < n; ++q) b.push_back(q);
  for (auto _ : state)
    benchmark::DoNotOptimize(pt_moment3_by_enumeration(t, a, b));
}
BENCHMARK(BM_PtMoment3Enumerated)->Arg(4)->Arg(6);

}  // namespace

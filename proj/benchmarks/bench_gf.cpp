#include <benchmark/benchmark.h>

#include <random>

#include "stabnet/fp.hpp"

namespace {

using namespace stabnet;

FpMatrix random_matrix(uint32_t p, size_t rows, size_t cols, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint32_t> d(0, p - 1);
  FpMatrix m(p, rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

void BM_Rref(benchmark::State& state) {
  uint32_t p = uint32_t(state.range(0));
  size_t n = size_t(state.range(1));
  FpMatrix m = random_matrix(p, n, 2 * n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Rref)->Args({2, 16})->Args({2, 64})->Args({5, 16})->Args({5, 64});

void BM_Kernel(benchmark::State& state) {
  FpMatrix m = random_matrix(3, 32, 64, 43);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(m));
}
BENCHMARK(BM_Kernel);

void BM_Solve(benchmark::State& state) {
  FpMatrix m = random_matrix(5, 48, 48, 44);
  std::vector<uint32_t> b(48, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, b));
}
BENCHMARK(BM_Solve);

}  // namespace

#include <benchmark/benchmark.h>

#include <random>

#include "stabnet/network.hpp"

namespace {

using namespace stabnet;

NetworkGraph star(uint32_t p, uint32_t n) {
  NetworkGraph g;
  g.field = PrimeField(p);
  g.bond_exponent = n;
  g.vertex_names = {"c", "a", "b", "d"};
  g.is_boundary = {false, true, true, true};
  g.edges = {{0, 1}, {0, 2}, {0, 3}};
  return g;
}

NetworkGraph grid(uint32_t p, uint32_t n) {
  NetworkGraph g;
  g.field = PrimeField(p);
  g.bond_exponent = n;
  g.vertex_names = {"x11", "x12", "x21", "x22", "a1", "a2", "a3", "a4"};
  g.is_boundary = {false, false, false, false, true, true, true, true};
  g.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {4, 0}, {5, 1}, {6, 2}, {7, 3}};
  return g;
}

void BM_BuildStar(benchmark::State& state) {
  NetworkGraph g = star(uint32_t(state.range(0)), uint32_t(state.range(1)));
  std::mt19937_64 rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(build_random_network(g, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BuildStar)->Args({2, 2})->Args({2, 6})->Args({3, 2})->Args({5, 3});

void BM_BuildGrid(benchmark::State& state) {
  NetworkGraph g = grid(uint32_t(state.range(0)), uint32_t(state.range(1)));
  std::mt19937_64 rng(12);
  for (auto _ : state) benchmark::DoNotOptimize(build_random_network(g, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BuildGrid)->Args({2, 1})->Args({5, 2})->Args({5, 4});

}  // namespace

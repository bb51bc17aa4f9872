#include <benchmark/benchmark.h>

#include "stabnet/geometry.hpp"
#include "stabnet/spin_model.hpp"

namespace {

using namespace stabnet;

// Ladder with 2k bulk vertices between two boundary terminals.
NetworkGraph ladder(size_t rungs) {
  NetworkGraph g;
  g.field = PrimeField(2);
  g.bond_exponent = 1;
  g.vertex_names = {"l", "r"};
  g.is_boundary = {true, true};
  for (size_t i = 0; i < 2 * rungs; ++i) {
    g.vertex_names.push_back("x" + std::to_string(i));
    g.is_boundary.push_back(false);
  }
  for (int side = 0; side < 2; ++side) {
    size_t prev = 0;
    for (size_t i = 0; i < rungs; ++i) {
      size_t cur = 2 + 2 * i + side;
      g.edges.emplace_back(prev, cur);
      prev = cur;
    }
    g.edges.emplace_back(prev, 1);
  }
  for (size_t i = 0; i < rungs; ++i)
    g.edges.emplace_back(2 + 2 * i, 2 + 2 * i + 1);
  return g;
}

void BM_MinCutEnumeration(benchmark::State& state) {
  NetworkGraph g = ladder(size_t(state.range(0)));
  std::vector<size_t> region{0};
  for (auto _ : state) benchmark::DoNotOptimize(min_cut(g, region));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MinCutEnumeration)->Arg(3)->Arg(5)->Arg(8);

void BM_GroundState(benchmark::State& state) {
  NetworkGraph g;
  g.field = PrimeField(uint32_t(state.range(0)));
  g.bond_exponent = 2;
  g.vertex_names = {"a", "b", "d", "x0", "x1", "x2"};
  g.is_boundary = {true, true, true, false, false, false};
  g.edges = {{3, 0}, {3, 4}, {4, 1}, {4, 5}, {5, 2}, {3, 5}};
  std::vector<size_t> a{0}, b{1}, c{2};
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(g, a, b, c));
}
BENCHMARK(BM_GroundState)->Arg(2)->Arg(3)->Arg(5);

void BM_MomentPrediction(benchmark::State& state) {
  NetworkGraph g;
  g.field = PrimeField(3);
  g.bond_exponent = 2;
  g.vertex_names = {"a", "b", "d", "x0", "x1"};
  g.is_boundary = {true, true, true, false, false};
  g.edges = {{3, 0}, {3, 4}, {4, 1}, {4, 2}, {3, 2}};
  std::vector<size_t> a{0}, b{1}, c{2};
  for (auto _ : state) benchmark::DoNotOptimize(moment_prediction(g, a, b, c));
}
BENCHMARK(BM_MomentPrediction);

}  // namespace

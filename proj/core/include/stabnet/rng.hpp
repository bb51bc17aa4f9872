#ifndef STABNET_RNG_HPP
#define STABNET_RNG_HPP

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace stabnet {

/// splitmix64 finalizer; the documented mixer behind per-trial seeds.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Per-trial seed: trial results depend only on (master_seed, trial_index),
/// never on the worker count or execution order.
inline uint64_t trial_seed(uint64_t master_seed, uint64_t trial_index) {
  return mix64(master_seed ^ mix64(trial_index + 1));
}

/// Runs fn(trial_index) for every index in [0, trials), split contiguously
/// across `workers` threads. fn must only write to per-trial slots.
inline void parallel_for_trials(int64_t trials, int workers,
                                const std::function<void(int64_t)>& fn) {
  if (workers <= 1 || trials < 2) {
    for (int64_t i = 0; i < trials; ++i) fn(i);
    return;
  }
  int w = std::min<int64_t>(workers, trials);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (int t = 0; t < w; ++t) {
    int64_t lo = trials * t / w, hi = trials * (t + 1) / w;
    threads.emplace_back([lo, hi, &fn] {
      for (int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : threads) th.join();
}

}  // namespace stabnet

#endif

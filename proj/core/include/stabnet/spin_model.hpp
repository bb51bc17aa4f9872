#ifndef STABNET_SPIN_MODEL_HPP
#define STABNET_SPIN_MODEL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "stabnet/geometry.hpp"
#include "stabnet/graph.hpp"
#include "stabnet/sigma3.hpp"

namespace stabnet {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Classical ferromagnetic model on the network graph: spins in Sigma_3(p),
/// energy sum_<xy> d(T_x, T_y), boundary conditions zeta on A, zeta^{-1} on
/// B, identity on C.
struct SpinModel {
  NetworkGraph graph;
  std::vector<SubspaceT> sigma;
  std::vector<std::vector<int>> dist;  // (2p+2)^2 distance table
  std::vector<int> pinned;             // spin index per vertex, -1 = free
  std::vector<size_t> free_vertices;   // bulk vertices, fixed order

  int64_t energy(std::span<const int> spin_of_vertex) const;
};

SpinModel make_spin_model(const NetworkGraph& g, std::span<const size_t> a,
                          std::span<const size_t> b,
                          std::span<const size_t> c);

struct GroundStateResult {
  int64_t e0 = 0;
  BigInt degeneracy = 0;
  /// Ground configurations as spin indices per free vertex (capped).
  std::vector<std::vector<int>> configs;
  bool configs_complete = true;
  /// Full energy histogram: energy -> number of configurations.
  std::map<int64_t, BigInt> histogram;
};

/// Exhaustive minimization over (2p+2)^{|V_b|} configurations.
GroundStateResult ground_state(const NetworkGraph& g,
                               std::span<const size_t> a,
                               std::span<const size_t> b,
                               std::span<const size_t> c,
                               size_t config_cap = size_t(1) << 24,
                               size_t stored_configs_cap = 1 << 16);

struct MomentPrediction {
  /// Exact ensemble average <tr (Psi_AB^{T_B})^3>.
  BigRational prediction;
  /// The p^{-3N_b} sum_configs p^{-N E} upper-bound form.
  BigRational loose_bound;
  int64_t e0 = 0;
  std::map<int64_t, BigInt> histogram;
};

/// Exact edge-factorized ensemble average; requires every bulk vertex to
/// carry at least 2 qudits when p is odd (third-moment formula hypothesis).
MomentPrediction moment_prediction(const NetworkGraph& g,
                                   std::span<const size_t> a,
                                   std::span<const size_t> b,
                                   std::span<const size_t> c,
                                   size_t config_cap = size_t(1) << 24);

struct GhzCountBound {
  double total = 0;
  double residual_term = 0;   // #_b log_p(p+1)
  double cut_count_term = 0;  // log_p(#_A #_B #_C)
  double delta = 0;           // (2p+2)^{|V_b|} / p^N
  int64_t hash_b = 0;         // #_b
  int64_t num_cuts_a = 0, num_cuts_b = 0, num_cuts_c = 0;
};

GhzCountBound ghz_count_bound(const NetworkGraph& g, std::span<const size_t> a,
                             std::span<const size_t> b,
                             std::span<const size_t> c);

/// p^e as an exact rational (e may be negative).
BigRational pow_rational(uint32_t p, int64_t e);

std::string rational_to_string(const BigRational& r);
double rational_to_double(const BigRational& r);

}  // namespace stabnet

#endif

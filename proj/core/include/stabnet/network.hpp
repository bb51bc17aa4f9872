#ifndef STABNET_NETWORK_HPP
#define STABNET_NETWORK_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "stabnet/graph.hpp"
#include "stabnet/tableau.hpp"

namespace stabnet {

/// Result of contracting a network: the boundary tableau (or zero), with
/// tr Psi = p^{log_trace} and the map from boundary edge-endpoints to qudits.
///
/// Qudit layout: edges are processed in input order; each edge contributes
/// N qudits for its u endpoint followed by N qudits for its v endpoint. The
/// boundary state keeps exactly the endpoint blocks at boundary vertices, in
/// that global order.
struct NetworkState {
  std::optional<Tableau> tableau;  // nullopt <=> Psi = 0
  int64_t log_trace = 0;           // valid when nonzero
  // (edge index, side 0/1) of each surviving endpoint block, ordered.
  std::vector<std::pair<size_t, int>> boundary_endpoints;
  uint32_t bond_exponent = 1;

  bool is_zero() const { return !tableau.has_value(); }
};

/// Builds the network with explicit bulk vertex tensors (one pure tableau of
/// N*deg(x) qudits per bulk vertex, ordered by bulk vertex id).
NetworkState build_network_with_tensors(const NetworkGraph& g,
                                        const std::vector<Tableau>& tensors);

/// Samples each bulk tensor uniformly from the pure stabilizer states.
NetworkState build_random_network(const NetworkGraph& g,
                                  std::mt19937_64& rng);

/// Qudit indices (into the boundary tableau) carried by edge endpoints at
/// the given boundary vertices.
std::vector<size_t> boundary_subsystem(const NetworkGraph& g,
                                       std::span<const size_t> region);

struct NonzeroStats {
  int64_t trials = 0;
  int64_t nonzero = 0;    // Psi != 0
  int64_t min_trace = 0;  // tr Psi = p^{-N_b}
  double frac_nonzero() const { return double(nonzero) / double(trials); }
  double frac_min_trace() const { return double(min_trace) / double(trials); }
};

NonzeroStats nonzero_probability_estimate(const NetworkGraph& g,
                                          int64_t trials, uint64_t seed,
                                          int workers = 1);

}  // namespace stabnet

#endif

#ifndef STABNET_GRAPH_HPP
#define STABNET_GRAPH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stabnet/fp.hpp"

namespace stabnet {

/// Connected multigraph with a boundary/bulk vertex split, prime p and bond
/// exponent N (bond dimension p^N). Parallel edges allowed, self-loops not.
struct NetworkGraph {
  PrimeField field{2};
  uint32_t bond_exponent = 1;  // N
  std::vector<std::string> vertex_names;
  std::vector<bool> is_boundary;
  std::vector<std::pair<size_t, size_t>> edges;
  std::map<std::string, std::vector<size_t>> regions;

  size_t vertex_id(const std::string& name) const;
  std::vector<size_t> boundary_ids() const;
  std::vector<size_t> bulk_ids() const;
  size_t degree(size_t v) const;
  /// N * sum of bulk degrees: the total bulk qudit count N_b.
  int64_t bulk_qudit_count() const;
  void validate() const;

  /// Region lookup by name; throws on unknown regions.
  std::vector<size_t> region(const std::string& name) const;

  /// Parses {"p":..,"N":..,"vertices":[..],"boundary":[..],
  ///         "edges":[[u,v],..],"regions":{"A":[..],..}}.
  static NetworkGraph from_json_text(const std::string& text);
  static NetworkGraph from_file(const std::string& path);
};

}  // namespace stabnet

#endif

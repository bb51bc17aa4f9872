#ifndef STABNET_GEOMETRY_HPP
#define STABNET_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stabnet/graph.hpp"

namespace stabnet {

/// Minimal-cut data for a boundary region A. A cut is a vertex set V_A with
/// V_A intersect boundary = A; its weight is the number of leaving edges.
struct CutReport {
  std::vector<size_t> region;
  int64_t min_cut_edges = 0;  // |gamma_A|
  int64_t s_rt = 0;           // N * |gamma_A|
  bool counts_available = false;
  int64_t num_min_cuts = 0;                      // #_A (when available)
  std::vector<std::vector<size_t>> min_cut_list; // each = sorted V_A
};

/// Number of edges leaving the vertex set W.
int64_t boundary_edge_count(const NetworkGraph& g, std::span<const size_t> w);

/// Exact min cut via augmenting-path max-flow, with cut count and explicit
/// list by exhaustive enumeration over bulk subsets (cap on |V_b|).
CutReport min_cut(const NetworkGraph& g, std::span<const size_t> region,
                  size_t enum_cap_bulk = 24);

/// Connected components of the bulk subgraph left after removing the three
/// cuts. The cuts must be pairwise disjoint.
int64_t residual_components(const NetworkGraph& g,
                            std::span<const size_t> cut_a,
                            std::span<const size_t> cut_b,
                            std::span<const size_t> cut_c);

struct ResidualMax {
  int64_t max_components = 0;
  bool found_disjoint_triple = false;
  int64_t triples_checked = 0;
};

/// Maximum residual-component count over all pairwise-disjoint triples of
/// minimal cuts from the three reports ( #_b ).
ResidualMax max_residual_components(const NetworkGraph& g,
                                    const CutReport& a, const CutReport& b,
                                    const CutReport& c);

/// For every pair of minimal cuts (V_A, V_B) with nonempty intersection V_0,
/// checks that V_A \ V_0 is a minimal cut for A or V_B \ V_0 is one for B.
bool disjointness_check(const NetworkGraph& g, std::span<const size_t> a,
                        std::span<const size_t> b, size_t enum_cap_bulk = 24);

}  // namespace stabnet

#endif

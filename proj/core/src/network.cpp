#include "stabnet/network.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "stabnet/rng.hpp"

namespace stabnet {

namespace {

struct Layout {
  size_t n_total;                                     // 2 N |E|
  std::vector<std::pair<size_t, int>> endpoints;      // (edge, side) blocks
  // first qudit of each endpoint block, indexed [edge][side]
  std::vector<std::array<size_t, 2>> block_start;
};

Layout make_layout(const NetworkGraph& g) {
  Layout lay;
  size_t next = 0;
  lay.block_start.resize(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) {
    for (int side = 0; side < 2; ++side) {
      lay.endpoints.emplace_back(e, side);
      lay.block_start[e][side] = next;
      next += g.bond_exponent;
    }
  }
  lay.n_total = next;
  return lay;
}

// Qudits owned by vertex v, ordered by (edge index, side).
std::vector<size_t> vertex_qudits(const NetworkGraph& g, const Layout& lay,
                                  size_t v) {
  std::vector<size_t> out;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (g.edges[e].first == v)
      for (size_t j = 0; j < g.bond_exponent; ++j)
        out.push_back(lay.block_start[e][0] + j);
    if (g.edges[e].second == v)
      for (size_t j = 0; j < g.bond_exponent; ++j)
        out.push_back(lay.block_start[e][1] + j);
  }
  return out;
}

}  // namespace

NetworkState build_network_with_tensors(const NetworkGraph& g,
                                        const std::vector<Tableau>& tensors) {
  g.validate();
  uint32_t p = g.field.p;
  Layout lay = make_layout(g);
  auto bulk = g.bulk_ids();
  if (tensors.size() != bulk.size())
    throw std::invalid_argument("build_network: tensor count mismatch");

  // All edge Bell pairs: N maximally entangled pairs per edge.
  std::vector<WeylOp> gens;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    for (size_t j = 0; j < g.bond_exponent; ++j) {
      size_t qa = lay.block_start[e][0] + j;
      size_t qb = lay.block_start[e][1] + j;
      std::vector<uint32_t> x(lay.n_total, 0), z(lay.n_total, 0);
      x[qa] = 1;
      x[qb] = 1;
      gens.push_back(WeylOp::make(p, x, z));
      std::fill(x.begin(), x.end(), 0);
      z[qa] = 1;
      z[qb] = p - 1;
      gens.push_back(WeylOp::make(p, x, z));
    }
  }
  Tableau state = Tableau::from_generators(p, lay.n_total, gens, 0);

  // Project each bulk vertex tensor onto its edge qudits.
  for (size_t bi = 0; bi < bulk.size(); ++bi) {
    size_t v = bulk[bi];
    auto qudits = vertex_qudits(g, lay, v);
    const Tableau& tensor = tensors[bi];
    if (tensor.p() != p || !tensor.pure() || tensor.n() != qudits.size())
      throw std::invalid_argument("build_network: bad vertex tensor shape");
    for (size_t gi = 0; gi < tensor.k(); ++gi) {
      WeylOp local = tensor.generator(gi);
      std::vector<uint32_t> x(lay.n_total, 0), z(lay.n_total, 0);
      for (size_t j = 0; j < qudits.size(); ++j) {
        x[qudits[j]] = local.x[j];
        z[qudits[j]] = local.z[j];
      }
      auto embedded = WeylOp::make(p, std::move(x), std::move(z), local.phase);
      auto next = postselect(state, embedded);
      if (!next) return NetworkState{std::nullopt, 0, {}, g.bond_exponent};
      state = std::move(*next);
    }
  }

  // Trace out every bulk endpoint block.
  std::vector<size_t> traced;
  std::vector<std::pair<size_t, int>> kept_blocks;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    size_t u = g.edges[e].first, v = g.edges[e].second;
    for (int side = 0; side < 2; ++side) {
      size_t vert = side == 0 ? u : v;
      if (g.is_boundary[vert]) {
        kept_blocks.emplace_back(e, side);
      } else {
        for (size_t j = 0; j < g.bond_exponent; ++j)
          traced.push_back(lay.block_start[e][side] + j);
      }
    }
  }
  std::sort(traced.begin(), traced.end());
  Tableau boundary = restrict_trace_out(state, traced);
  if (!boundary.pure())
    throw std::logic_error("build_network: boundary state not pure");
  NetworkState out;
  out.log_trace = boundary.log_trace();
  out.tableau = std::move(boundary);
  out.boundary_endpoints = std::move(kept_blocks);
  out.bond_exponent = g.bond_exponent;
  return out;
}

NetworkState build_random_network(const NetworkGraph& g,
                                  std::mt19937_64& rng) {
  auto bulk = g.bulk_ids();
  std::vector<Tableau> tensors;
  tensors.reserve(bulk.size());
  for (size_t v : bulk) {
    size_t nv = g.degree(v) * g.bond_exponent;
    tensors.push_back(sample_uniform(nv, g.field.p, rng));
  }
  return build_network_with_tensors(g, tensors);
}

std::vector<size_t> boundary_subsystem(const NetworkGraph& g,
                                       std::span<const size_t> region) {
  for (size_t v : region)
    if (v >= g.vertex_names.size() || !g.is_boundary[v])
      throw std::invalid_argument("boundary_subsystem: not a boundary vertex");
  std::vector<bool> wanted(g.vertex_names.size(), false);
  for (size_t v : region) wanted[v] = true;
  std::vector<size_t> out;
  size_t next = 0;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    size_t u = g.edges[e].first, v = g.edges[e].second;
    for (int side = 0; side < 2; ++side) {
      size_t vert = side == 0 ? u : v;
      if (!g.is_boundary[vert]) continue;
      for (size_t j = 0; j < g.bond_exponent; ++j, ++next)
        if (wanted[vert]) out.push_back(next);
    }
  }
  return out;
}

NonzeroStats nonzero_probability_estimate(const NetworkGraph& g,
                                          int64_t trials, uint64_t seed,
                                          int workers) {
  if (trials < 1)
    throw std::invalid_argument("nonzero_probability_estimate: trials >= 1");
  int64_t min_trace_value = -g.bulk_qudit_count();
  std::vector<uint8_t> nonzero(trials, 0), minimal(trials, 0);
  parallel_for_trials(trials, workers, [&](int64_t i) {
    std::mt19937_64 rng(trial_seed(seed, uint64_t(i)));
    NetworkState s = build_random_network(g, rng);
    if (!s.is_zero()) {
      nonzero[i] = 1;
      if (s.log_trace == min_trace_value) minimal[i] = 1;
      if (s.log_trace < min_trace_value || s.log_trace > 0)
        throw std::logic_error("trace outside the quantized range");
    }
  });
  NonzeroStats st;
  st.trials = trials;
  for (int64_t i = 0; i < trials; ++i) {
    st.nonzero += nonzero[i];
    st.min_trace += minimal[i];
  }
  return st;
}

}  // namespace stabnet

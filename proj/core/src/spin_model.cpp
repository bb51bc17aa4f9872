#include "stabnet/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace stabnet {

int64_t SpinModel::energy(std::span<const int> spin_of_vertex) const {
  int64_t e = 0;
  for (auto& [u, v] : graph.edges)
    e += dist[spin_of_vertex[u]][spin_of_vertex[v]];
  return e;
}

SpinModel make_spin_model(const NetworkGraph& g, std::span<const size_t> a,
                          std::span<const size_t> b,
                          std::span<const size_t> c) {
  g.validate();
  std::set<size_t> sa(a.begin(), a.end()), sb(b.begin(), b.end()),
      sc(c.begin(), c.end());
  if (sa.size() + sb.size() + sc.size() !=
      a.size() + b.size() + c.size())
    throw std::invalid_argument("spin model: regions have repeats");
  for (size_t v : g.boundary_ids()) {
    int hits = int(sa.count(v)) + int(sb.count(v)) + int(sc.count(v));
    if (hits != 1)
      throw std::invalid_argument(
          "spin model: regions must partition the boundary");
  }
  SpinModel m;
  m.graph = g;
  m.sigma = build_sigma3(g.field);
  size_t q = m.sigma.size();
  m.dist.assign(q, std::vector<int>(q, 0));
  for (size_t i = 0; i < q; ++i)
    for (size_t j = 0; j < q; ++j) m.dist[i][j] = distance(m.sigma[i], m.sigma[j]);
  m.pinned.assign(g.vertex_names.size(), -1);
  for (size_t v : a) m.pinned[v] = int(kSigmaZeta);
  for (size_t v : b) m.pinned[v] = int(kSigmaZetaInv);
  for (size_t v : c) m.pinned[v] = int(kSigmaIdentity);
  m.free_vertices = g.bulk_ids();
  return m;
}

namespace {

// Visits every configuration; fn(spins, energy). Enumeration is a
// mixed-radix counter over the free vertices in fixed order.
template <typename Fn>
void for_each_config(const SpinModel& m, size_t config_cap, Fn&& fn) {
  size_t q = m.sigma.size();
  size_t nb = m.free_vertices.size();
  double size_check = std::pow(double(q), double(nb));
  if (size_check > double(config_cap))
    throw std::length_error("spin model: configuration cap exceeded");
  std::vector<int> spins(m.pinned.begin(), m.pinned.end());
  std::vector<int> digits(nb, 0);
  for (size_t v : m.free_vertices) spins[v] = 0;
  while (true) {
    for (size_t i = 0; i < nb; ++i) spins[m.free_vertices[i]] = digits[i];
    fn(std::as_const(spins), m.energy(spins));
    size_t d = 0;
    while (d < nb && ++digits[d] == int(q)) digits[d++] = 0;
    if (d == nb && nb > 0) break;
    if (nb == 0) break;
  }
}

}  // namespace

GroundStateResult ground_state(const NetworkGraph& g,
                               std::span<const size_t> a,
                               std::span<const size_t> b,
                               std::span<const size_t> c, size_t config_cap,
                               size_t stored_configs_cap) {
  SpinModel m = make_spin_model(g, a, b, c);
  GroundStateResult out;
  out.e0 = INT64_MAX;
  for_each_config(m, config_cap, [&](const std::vector<int>& spins,
                                     int64_t e) {
    out.histogram[e] += 1;
    if (e < out.e0) {
      out.e0 = e;
      out.configs.clear();
      out.configs_complete = true;
    }
    if (e == out.e0) {
      if (out.configs.size() < stored_configs_cap) {
        std::vector<int> free_spins;
        for (size_t v : m.free_vertices) free_spins.push_back(spins[v]);
        out.configs.push_back(std::move(free_spins));
      } else {
        out.configs_complete = false;
      }
    }
  });
  out.degeneracy = out.histogram.at(out.e0);
  return out;
}

BigRational pow_rational(uint32_t p, int64_t e) {
  BigInt num = 1;
  for (int64_t i = 0; i < std::llabs(e); ++i) num *= p;
  if (e >= 0) return BigRational(num);
  return BigRational(1, num);
}

MomentPrediction moment_prediction(const NetworkGraph& g,
                                   std::span<const size_t> a,
                                   std::span<const size_t> b,
                                   std::span<const size_t> c,
                                   size_t config_cap) {
  SpinModel m = make_spin_model(g, a, b, c);
  uint32_t p = g.field.p;
  int64_t n = g.bond_exponent;
  if (p != 2) {
    for (size_t v : g.bulk_ids()) {
      if (int64_t(g.degree(v)) * n < 2)
        throw std::invalid_argument(
            "moment_prediction: for odd p every bulk vertex needs at least "
            "2 qudits (N*deg >= 2); the third-moment formula does not cover "
            "single-qudit tensors");
    }
  }
  MomentPrediction out;
  out.e0 = INT64_MAX;
  for_each_config(m, config_cap, [&](const std::vector<int>&, int64_t e) {
    out.histogram[e] += 1;
    out.e0 = std::min(out.e0, e);
  });
  // sum over configs of p^{-N E}
  BigRational config_sum = 0;
  for (auto& [e, count] : out.histogram)
    config_sum += BigRational(count) * pow_rational(p, -n * e);
  // Vertex prefactors 1 / (D_x (D_x + 1)(D_x + p)), D_x = p^{N deg(x)}.
  BigRational prefactor = 1;
  for (size_t v : g.bulk_ids()) {
    BigInt dx = 1;
    for (int64_t i = 0; i < int64_t(g.degree(v)) * n; ++i) dx *= p;
    prefactor /= BigRational(dx * (dx + 1) * (dx + p));
  }
  out.prediction = prefactor * config_sum;
  out.loose_bound = pow_rational(p, -3 * g.bulk_qudit_count()) * config_sum;
  return out;
}

GhzCountBound ghz_count_bound(const NetworkGraph& g, std::span<const size_t> a,
                             std::span<const size_t> b,
                             std::span<const size_t> c) {
  CutReport ra = min_cut(g, a), rb = min_cut(g, b), rc = min_cut(g, c);
  if (!ra.counts_available || !rb.counts_available || !rc.counts_available)
    throw std::length_error("ghz_count_bound: cut enumeration cap exceeded");
  ResidualMax res = max_residual_components(g, ra, rb, rc);
  if (!res.found_disjoint_triple)
    throw std::logic_error("ghz_count_bound: no disjoint minimal-cut triple");
  uint32_t p = g.field.p;
  double logp = std::log(double(p));
  GhzCountBound out;
  out.hash_b = res.max_components;
  out.num_cuts_a = ra.num_min_cuts;
  out.num_cuts_b = rb.num_min_cuts;
  out.num_cuts_c = rc.num_min_cuts;
  out.residual_term = double(out.hash_b) * std::log(double(p + 1)) / logp;
  out.cut_count_term =
      std::log(double(ra.num_min_cuts) * double(rb.num_min_cuts) *
               double(rc.num_min_cuts)) /
      logp;
  out.delta = std::pow(double(2 * p + 2), double(g.bulk_ids().size())) /
              std::pow(double(p), double(g.bond_exponent));
  out.total = out.residual_term + out.cut_count_term + 4 * out.delta;
  return out;
}

std::string rational_to_string(const BigRational& r) {
  return r.str();
}

double rational_to_double(const BigRational& r) {
  return r.convert_to<double>();
}

}  // namespace stabnet

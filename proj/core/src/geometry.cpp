#include "stabnet/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

namespace stabnet {

namespace {

std::vector<bool> to_mask(const NetworkGraph& g, std::span<const size_t> w) {
  std::vector<bool> mask(g.vertex_names.size(), false);
  for (size_t v : w) {
    if (v >= mask.size()) throw std::out_of_range("bad vertex id");
    mask[v] = true;
  }
  return mask;
}

// Unit-capacity max flow (Edmonds-Karp) with contracted terminal sets.
int64_t max_flow(const NetworkGraph& g, const std::vector<bool>& sources,
                 const std::vector<bool>& sinks) {
  size_t n = g.vertex_names.size();
  size_t s = n, t = n + 1;
  struct Arc {
    size_t to;
    int64_t cap;
    size_t rev;
  };
  std::vector<std::vector<Arc>> adj(n + 2);
  auto add_edge = [&](size_t u, size_t v, int64_t cap) {
    adj[u].push_back({v, cap, adj[v].size()});
    adj[v].push_back({u, cap, adj[u].size() - 1});  // undirected edge
  };
  auto add_arc = [&](size_t u, size_t v, int64_t cap) {
    adj[u].push_back({v, cap, adj[v].size()});
    adj[v].push_back({u, 0, adj[u].size() - 1});
  };
  const int64_t inf = std::numeric_limits<int64_t>::max() / 4;
  for (auto& [a, b] : g.edges) add_edge(a, b, 1);
  for (size_t v = 0; v < n; ++v) {
    if (sources[v]) add_arc(s, v, inf);
    if (sinks[v]) add_arc(v, t, inf);
  }
  int64_t flow = 0;
  while (true) {
    std::vector<std::pair<size_t, size_t>> parent(n + 2, {SIZE_MAX, SIZE_MAX});
    std::deque<size_t> q{s};
    parent[s] = {s, 0};
    while (!q.empty() && parent[t].first == SIZE_MAX) {
      size_t u = q.front();
      q.pop_front();
      for (size_t i = 0; i < adj[u].size(); ++i) {
        const Arc& a = adj[u][i];
        if (a.cap > 0 && parent[a.to].first == SIZE_MAX) {
          parent[a.to] = {u, i};
          q.push_back(a.to);
        }
      }
    }
    if (parent[t].first == SIZE_MAX) break;
    int64_t push = inf;
    for (size_t v = t; v != s;) {
      auto [u, i] = parent[v];
      push = std::min(push, adj[u][i].cap);
      v = u;
    }
    for (size_t v = t; v != s;) {
      auto [u, i] = parent[v];
      adj[u][i].cap -= push;
      adj[adj[u][i].to][adj[u][i].rev].cap += push;
      v = u;
    }
    flow += push;
  }
  return flow;
}

}  // namespace

int64_t boundary_edge_count(const NetworkGraph& g, std::span<const size_t> w) {
  auto mask = to_mask(g, w);
  int64_t count = 0;
  for (auto& [a, b] : g.edges) count += mask[a] != mask[b];
  return count;
}

CutReport min_cut(const NetworkGraph& g, std::span<const size_t> region,
                  size_t enum_cap_bulk) {
  for (size_t v : region)
    if (v >= g.vertex_names.size() || !g.is_boundary[v])
      throw std::invalid_argument("min_cut: region must be boundary vertices");
  CutReport rep;
  rep.region.assign(region.begin(), region.end());
  std::sort(rep.region.begin(), rep.region.end());

  std::vector<bool> in_region(g.vertex_names.size(), false);
  for (size_t v : region) in_region[v] = true;
  std::vector<bool> sources(g.vertex_names.size(), false);
  std::vector<bool> sinks(g.vertex_names.size(), false);
  bool any_source = false, any_sink = false;
  for (size_t v = 0; v < g.vertex_names.size(); ++v) {
    if (!g.is_boundary[v]) continue;
    if (in_region[v]) {
      sources[v] = true;
      any_source = true;
    } else {
      sinks[v] = true;
      any_sink = true;
    }
  }
  if (!any_source || !any_sink) {
    rep.min_cut_edges = 0;  // empty cut (or the whole graph) has weight 0
  } else {
    rep.min_cut_edges = max_flow(g, sources, sinks);
  }
  rep.s_rt = rep.min_cut_edges * int64_t(g.bond_exponent);

  auto bulk = g.bulk_ids();
  if (bulk.size() > enum_cap_bulk) return rep;  // counts unavailable
  rep.counts_available = true;
  size_t total = size_t(1) << bulk.size();
  for (size_t mask = 0; mask < total; ++mask) {
    std::vector<size_t> cut = rep.region;
    for (size_t i = 0; i < bulk.size(); ++i)
      if (mask >> i & 1) cut.push_back(bulk[i]);
    int64_t w = boundary_edge_count(g, cut);
    if (w < rep.min_cut_edges)
      throw std::logic_error("min_cut: enumeration beat max-flow");
    if (w == rep.min_cut_edges) {
      std::sort(cut.begin(), cut.end());
      rep.min_cut_list.push_back(std::move(cut));
    }
  }
  rep.num_min_cuts = int64_t(rep.min_cut_list.size());
  return rep;
}

int64_t residual_components(const NetworkGraph& g,
                            std::span<const size_t> cut_a,
                            std::span<const size_t> cut_b,
                            std::span<const size_t> cut_c) {
  auto ma = to_mask(g, cut_a), mb = to_mask(g, cut_b), mc = to_mask(g, cut_c);
  for (size_t v = 0; v < g.vertex_names.size(); ++v) {
    if ((ma[v] && mb[v]) || (ma[v] && mc[v]) || (mb[v] && mc[v]))
      throw std::invalid_argument("residual_components: cuts overlap");
  }
  std::vector<bool> removed(g.vertex_names.size(), false);
  for (size_t v = 0; v < g.vertex_names.size(); ++v)
    removed[v] = ma[v] || mb[v] || mc[v] || g.is_boundary[v];
  int64_t components = 0;
  std::vector<bool> seen(g.vertex_names.size(), false);
  for (size_t start = 0; start < g.vertex_names.size(); ++start) {
    if (removed[start] || seen[start]) continue;
    ++components;
    std::vector<size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      for (auto& [a, b] : g.edges) {
        size_t other = SIZE_MAX;
        if (a == v) other = b;
        if (b == v) other = a;
        if (other != SIZE_MAX && !removed[other] && !seen[other]) {
          seen[other] = true;
          stack.push_back(other);
        }
      }
    }
  }
  return components;
}

ResidualMax max_residual_components(const NetworkGraph& g, const CutReport& a,
                                    const CutReport& b, const CutReport& c) {
  if (!a.counts_available || !b.counts_available || !c.counts_available)
    throw std::invalid_argument("max_residual_components: cut lists missing");
  ResidualMax out;
  for (const auto& va : a.min_cut_list) {
    for (const auto& vb : b.min_cut_list) {
      for (const auto& vc : c.min_cut_list) {
        ++out.triples_checked;
        std::set<size_t> sa(va.begin(), va.end());
        bool disjoint = true;
        for (size_t v : vb) disjoint = disjoint && !sa.count(v);
        std::set<size_t> sb(vb.begin(), vb.end());
        for (size_t v : vc)
          disjoint = disjoint && !sa.count(v) && !sb.count(v);
        if (!disjoint) continue;
        int64_t comps = residual_components(g, va, vb, vc);
        out.max_components = std::max(out.max_components, comps);
        out.found_disjoint_triple = true;
      }
    }
  }
  return out;
}

bool disjointness_check(const NetworkGraph& g, std::span<const size_t> a,
                        std::span<const size_t> b, size_t enum_cap_bulk) {
  CutReport ra = min_cut(g, a, enum_cap_bulk);
  CutReport rb = min_cut(g, b, enum_cap_bulk);
  if (!ra.counts_available || !rb.counts_available)
    throw std::length_error("disjointness_check: cap exceeded");
  for (const auto& va : ra.min_cut_list) {
    std::set<size_t> sa(va.begin(), va.end());
    for (const auto& vb : rb.min_cut_list) {
      std::vector<size_t> v0;
      for (size_t v : vb)
        if (sa.count(v)) v0.push_back(v);
      if (v0.empty()) continue;
      std::set<size_t> s0(v0.begin(), v0.end());
      std::vector<size_t> va_red, vb_red;
      for (size_t v : va)
        if (!s0.count(v)) va_red.push_back(v);
      for (size_t v : vb)
        if (!s0.count(v)) vb_red.push_back(v);
      bool ok = boundary_edge_count(g, va_red) == ra.min_cut_edges ||
                boundary_edge_count(g, vb_red) == rb.min_cut_edges;
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace stabnet

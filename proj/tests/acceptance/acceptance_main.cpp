// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "stabnet/dense.hpp"
#include "stabnet/experiments.hpp"
#include "stabnet/moments.hpp"
#include "stabnet/network.hpp"
#include "stabnet/rng.hpp"
#include "stabnet/sigma3.hpp"
#include "stabnet/spin_model.hpp"
#include "stabnet/tableau.hpp"

using namespace stabnet;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL",
              criterion, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string graph_path(const std::string& name) {
  return std::string(STABNET_GRAPHS_DIR) + "/" + name;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- criterion 1: exhaustive third moment = formula ----

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  bool pass = true;
  for (auto [p, n] : std::vector<std::pair<uint32_t, size_t>>{
           {2, 1}, {2, 2}, {3, 2}}) {
    MomentReport rep = third_moment_check_exhaustive(n, PrimeField(p));
    worst = std::max(worst, rep.max_abs_deviation);
    pass = pass && rep.max_abs_deviation <= 1e-10;
  }
  double elapsed = seconds_since(t0);
  pass = pass && elapsed <= 300.0;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "max deviation %.3g, tolerance 1e-10, %.1fs of 300s budget",
                worst, elapsed);
  report(1, pass, "third-moment exactness for (2,1), (2,2), (3,2)", detail);
}

// ---- criterion 2: Sigma_3 structure ----

void criterion2() {
  bool pass = true;
  std::string why;
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    auto sigma = build_sigma3(PrimeField(p));
    if (sigma.size() != 2 * p + 2) {
      pass = false;
      why = "size mismatch";
    }
    for (const auto& t : sigma)
      if (!is_lagrangian_stochastic(t.basis)) {
        pass = false;
        why = "validator failed";
      }
    for (size_t i = 0; i < sigma.size(); ++i)
      for (size_t j = 0; j < sigma.size(); ++j) {
        int expected =
            i == j ? 0 : (sigma[i].odd != sigma[j].odd ? 1 : 2);
        if (distance(sigma[i], sigma[j]) != expected) {
          pass = false;
          why = "metric/parity mismatch";
        }
      }
  }
  for (uint32_t p : {2u, 3u}) {
    auto sigma = build_sigma3(PrimeField(p));
    for (size_t n : {1u, 2u}) {
      double total = 0;
      std::vector<Eigen::MatrixXd> rs;
      for (const auto& t : sigma) rs.push_back(r_matrix(t, n));
      for (size_t i = 0; i < sigma.size(); ++i) {
        total += rs[i].trace();
        for (size_t j = 0; j < sigma.size(); ++j) {
          double tr = (rs[i] * rs[j].transpose()).trace();
          double expect = std::pow(
              double(p),
              3.0 * double(n) - double(n) * distance(sigma[i], sigma[j]));
          if (std::abs(tr - expect) > 1e-9) {
            pass = false;
            why = "inner-product formula";
          }
        }
      }
      double d = std::pow(double(p), double(n));
      if (std::abs(total - d * (d + 1) * (d + double(p))) > 1e-9) {
        pass = false;
        why = "sum of traces";
      }
    }
  }
  report(2, pass, "Sigma_3(p) structure for p in {2,3,5,7}",
         pass ? "2p+2 validated elements, metric and trace identities exact"
              : why);
}

// ---- criterion 3: commutant membership + negative control ----

void criterion3() {
  bool pass = true;
  double worst = 0;
  for (uint32_t p : {2u, 3u}) {
    MomentReport rep = commutant_check(2, PrimeField(p), 50, 33003);
    worst = std::max(worst, rep.max_abs_deviation);
    pass = pass && rep.pass;
  }
  // Negative control at odd p; for p=2 permutation operators commute with
  // every U^{x3} so no control can fail there.
  MomentReport neg = negative_control_check(2, PrimeField(3));
  pass = pass && neg.pass;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "50 Clifford words per (p,n), worst commutator %.3g <= 1e-9; "
                "non-Clifford control deviates by %.3g",
                worst, neg.max_abs_deviation);
  report(3, pass, "Clifford commutant membership for (2,2) and (3,2)",
         detail);
}

// ---- criterion 4: GHZ-count oracle equivalence ----

void criterion4() {
  std::mt19937_64 rng(44004);
  std::uniform_int_distribution<int> part(0, 2);
  bool pass = true;
  int checked = 0;
  for (int rep = 0; rep < 2000 && checked < 200; ++rep) {
    uint32_t p = rep % 2 ? 2 : 3;
    size_t n = 3 + rep % (p == 2 ? 3 : 2);
    if (p == 2 && rep % 5 == 0) n = 5;
    Tableau t = sample_uniform(n, p, rng);
    std::array<std::vector<size_t>, 3> parts;
    for (size_t q = 0; q < n; ++q) parts[part(rng)].push_back(q);
    if (parts[0].empty() || parts[1].empty()) continue;
    GhzContent gc = ghz_content(t, parts[0], parts[1], parts[2]);
    int64_t sa = entropy(t, parts[0]), sb = entropy(t, parts[1]),
            sc = entropy(t, parts[2]);
    // dense oracle: entropies + pt3
    CMat rho = tableau_to_dense_operator(t);
    auto dense_s = [&](const std::vector<size_t>& sub) {
      return int64_t(std::llround(dense_entropy(rho, p, n, sub)));
    };
    std::vector<size_t> ab = parts[0];
    ab.insert(ab.end(), parts[1].begin(), parts[1].end());
    std::sort(ab.begin(), ab.end());
    CMat rho_ab = partial_trace(rho, p, n, ab);
    std::set<size_t> bset(parts[1].begin(), parts[1].end());
    std::vector<size_t> b_pos;
    for (size_t i = 0; i < ab.size(); ++i)
      if (bset.count(ab[i])) b_pos.push_back(i);
    double pt3 = dense_pt3(rho_ab, p, ab.size(), b_pos);
    int64_t m_dense = int64_t(std::llround(-std::log(pt3) / std::log(p)));
    if (std::abs(pt3 - std::pow(double(p), -double(m_dense))) > 1e-9)
      pass = false;
    int64_t g_dense = dense_s(parts[0]) + dense_s(parts[1]) +
                      dense_s(parts[2]) - m_dense;
    int64_t iab = dense_s(parts[0]) + dense_s(parts[1]) - dense_s(parts[2]);
    int64_t iac = dense_s(parts[0]) + dense_s(parts[2]) - dense_s(parts[1]);
    int64_t ibc = dense_s(parts[1]) + dense_s(parts[2]) - dense_s(parts[0]);
    pass = pass && gc.g == g_dense && gc.c == (iab - g_dense) / 2 &&
           gc.b == (iac - g_dense) / 2 && gc.a == (ibc - g_dense) / 2;
    pass = pass && (sa + sb + sc) % 2 == gc.g % 2;
    ++checked;
  }
  pass = pass && checked == 200;
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "%d random tripartite states, p in {2,3}, n <= 5", checked);
  report(4, pass, "algebraic (a,b,c,g) equals the dense oracle exactly",
         detail);
}

// ---- criterion 5: trace quantization + nonzero probability ----

void criterion5() {
  const std::vector<std::string> shapes{"star.json", "path4.json",
                                        "grid2x2.json", "cross4.json",
                                        "doublestar.json"};
  const int64_t per_shape = 2000;
  bool pass = true;
  std::string why = "all traces quantized; minimal-trace fraction in band";
  for (const auto& shape : shapes) {
    NetworkGraph g = NetworkGraph::from_file(graph_path(shape));
    g.field = PrimeField(5);
    g.bond_exponent = 3;
    int64_t nb = g.bulk_qudit_count();
    int64_t nonzero = 0, minimal = 0;
    for (int64_t i = 0; i < per_shape; ++i) {
      std::mt19937_64 rng(trial_seed(55005, uint64_t(i)));
      NetworkState st = build_random_network(g, rng);
      if (st.is_zero()) continue;
      ++nonzero;
      if (st.log_trace < -nb || st.log_trace > 0) {
        pass = false;
        why = "trace outside {p^{k-N_b}} on " + shape;
      }
      if (st.log_trace == -nb) ++minimal;
    }
    double eps = std::pow(2.0, double(g.vertex_names.size())) /
                 std::pow(5.0, 3.0);
    double bound = 1.0 - eps;
    double q = double(minimal) / double(per_shape);
    double sigma =
        std::sqrt(std::max(q * (1.0 - q), 1e-12) / double(per_shape));
    if (q < bound - 3.0 * sigma) {
      pass = false;
      why = "minimal-trace fraction below the bound on " + shape;
    }
    (void)nonzero;
  }
  report(5, pass, "trace quantization over 10^4 networks on 5 shapes", why);
}

// ---- criterion 6: RT saturation window ----

void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string why;
  char buf[160];
  double worst_gap = 0;
  for (const std::string& shape : {std::string("star.json"),
                                   std::string("grid2x2.json")}) {
    for (uint32_t n = 1; n <= 4; ++n) {
      NetworkGraph g = NetworkGraph::from_file(graph_path(shape));
      g.field = PrimeField(5);
      g.bond_exponent = n;
      RtResult rt = run_rt(g, 66006 + n, 1000, 1);
      for (const auto& reg : rt.regions) {
        if (reg.upper_violations != 0) {
          pass = false;
          why = "S(A) exceeded S_RT on " + shape;
        }
        if (reg.mean_s_nonzero < reg.lower_bound ||
            reg.mean_s_nonzero > double(reg.s_rt)) {
          pass = false;
          std::snprintf(buf, sizeof(buf),
                        "mean S outside [lower bound, S_RT] for region %s "
                        "of %s at N=%u",
                        reg.name.c_str(), shape.c_str(), n);
          why = buf;
        }
        worst_gap = std::max(worst_gap, reg.gap);
      }
    }
  }
  double elapsed = seconds_since(t0);
  pass = pass && elapsed <= 600.0;
  if (pass)
    std::snprintf(buf, sizeof(buf),
                  "10^3 trials/point, worst gap %.3f, %.1fs of 600s budget",
                  worst_gap, elapsed);
  report(6, pass, "RT saturation window on star and 2x2 grid, p=5",
         pass ? buf : why);
}

// ---- criterion 7: spin-model moment identity ----

void criterion7() {
  bool pass = true;
  std::string why;
  // (a) exhaustive ensemble equality at p=2, N=1 on the star graph
  {
    NetworkGraph g = NetworkGraph::from_file(graph_path("star.json"));
    g.field = PrimeField(2);
    g.bond_exponent = 1;
    std::vector<size_t> a{g.vertex_id("a")}, b{g.vertex_id("b")},
        c{g.vertex_id("d")};
    auto pred = moment_prediction(g, a, b, c);
    auto qa = boundary_subsystem(g, a);
    auto qb = boundary_subsystem(g, b);
    BigRational total = 0;
    auto tensors = enumerate_all(3, 2);
    for (const auto& v : tensors) {
      NetworkState st = build_network_with_tensors(g, {v});
      total += sample_pt3_unnormalized(g, st, qa, qb);
    }
    BigRational mean = total / int64_t(tensors.size());
    if (mean != pred.prediction) {
      pass = false;
      why = "exhaustive ensemble mean != prediction";
    }
    if (!(pred.prediction <= pred.loose_bound)) {
      pass = false;
      why = "prediction above the loose bound";
    }
  }
  // (b) Monte Carlo z-score at p=3, N=2
  double z = 0;
  {
    NetworkGraph g = NetworkGraph::from_file(graph_path("star.json"));
    g.field = PrimeField(3);
    g.bond_exponent = 2;
    SpinModelRun run = run_spinmodel(g, "A", "B", "C", 77007, 100000, 1);
    z = run.z_score;
    if (std::abs(z) > 4.0) {
      pass = false;
      why = "Monte Carlo z-score above 4";
    }
    if (!(run.prediction.prediction <= run.prediction.loose_bound)) {
      pass = false;
      why = "prediction above the loose bound";
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "exact equality over 1080 tensors; MC z = %.2f at 10^5 "
                "trials; prediction <= bound",
                z);
  report(7, pass, "spin-model moment identity", pass ? detail : why);
}

// ---- criterion 8: finite-size GHZ bound and trend ----

void criterion8() {
  bool pass = true;
  std::string why;
  std::vector<double> means, ses;
  double bound_total = 0;
  for (uint32_t n : {2u, 4u, 6u}) {
    NetworkGraph g = NetworkGraph::from_file(graph_path("star.json"));
    g.field = PrimeField(2);
    g.bond_exponent = n;
    GhzResult res = run_ghz(g, "A", "B", "C", 88008 + n, 10000, 1);
    bound_total = res.bound.total;
    if (res.mean_g_nonzero > res.bound.total + 3.0 * res.se_g_nonzero) {
      pass = false;
      why = "mean g above the bound at N=" + std::to_string(n);
    }
    means.push_back(res.mean_g_nonzero);
    ses.push_back(res.se_g_nonzero);
  }
  for (size_t i = 0; i + 1 < means.size(); ++i) {
    double combined =
        3.0 * std::sqrt(ses[i] * ses[i] + ses[i + 1] * ses[i + 1]);
    if (means[i + 1] > means[i] + combined) {
      pass = false;
      why = "mean g increases with N";
    }
  }
  char detail[240];
  std::snprintf(detail, sizeof(detail),
                "mean g = %.4f / %.4f / %.4f at N=2/4/6 (se ~ %.3f), all "
                "below the bound (final %.3f)%s%s",
                means[0], means[1], means[2], ses[2], bound_total,
                pass ? "" : "; ", pass ? "" : why.c_str());
  report(8, pass,
         "GHZ count within the geometric bound and non-increasing in N",
         detail);
}

// ---- criterion 9: fourpartite entropic accounting ----

void criterion9() {
  NetworkGraph g = NetworkGraph::from_file(graph_path("cross4.json"));
  // p = 3, N = 3 as shipped in the graph file.
  const int64_t target_nonzero = 1000;
  int64_t nonzero = 0, within = 0, monogamy_violations = 0;
  bool integral = true;
  std::array<std::vector<size_t>, 4> parts;
  std::vector<std::vector<size_t>> vert_parts;
  for (int i = 0; i < 4; ++i) {
    auto verts = g.region("A" + std::to_string(i + 1));
    parts[i] = boundary_subsystem(g, verts);
  }
  for (int64_t i = 0; nonzero < target_nonzero && i < 4 * target_nonzero;
       ++i) {
    std::mt19937_64 rng(trial_seed(99009, uint64_t(i)));
    NetworkState st = build_random_network(g, rng);
    if (st.is_zero()) continue;
    ++nonzero;
    FourpartiteReport rep = fourpartite_report(*st.tableau, parts);
    double target = -double(rep.i3) / 2.0;
    bool all_within = true;
    for (int k = 0; k < 4; ++k) {
      if (rep.residual_entropies[k] < 0) integral = false;
      if (std::abs(double(rep.residual_entropies[k]) - target) > 2.0)
        all_within = false;
    }
    if (all_within) ++within;
    if (double(rep.i3) > 3.0 * double(rep.g_max)) ++monogamy_violations;
    // With no GHZ content on any tripartition the monogamy inequality is
    // strict: I3 <= 0.
    if (rep.g_max == 0 && rep.i3 > 0) ++monogamy_violations;
  }
  double frac = double(within) / double(nonzero);
  bool pass = nonzero == target_nonzero && integral && frac >= 0.95 &&
              monogamy_violations == 0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%lld nonzero samples, residuals within 2 of -I3/2 in "
                "%.1f%% (>=95%% needed), %lld monogamy violations",
                (long long)nonzero, 100.0 * frac,
                (long long)monogamy_violations);
  report(9, pass, "fourpartite perfect-tensor accounting at p=3, N=3",
         detail);
}

// ---- criterion 10: geometry lemmas ----

void criterion10() {
  std::mt19937_64 rng(1010);
  bool pass = true;
  std::string why = "flow=bruteforce, disjointness lemma, E0 identity hold";
  auto random_graph = [&](size_t nb, size_t nx) {
    while (true) {
      NetworkGraph g;
      g.field = PrimeField(2);
      g.bond_exponent = 1 + rng() % 3;
      for (size_t i = 0; i < nb; ++i) {
        g.vertex_names.push_back("b" + std::to_string(i));
        g.is_boundary.push_back(true);
      }
      for (size_t i = 0; i < nx; ++i) {
        g.vertex_names.push_back("x" + std::to_string(i));
        g.is_boundary.push_back(false);
      }
      size_t nall = nb + nx;
      size_t edges = nall + rng() % (nall + 2);
      for (size_t e = 0; e < edges; ++e) {
        size_t u = rng() % nall, v = rng() % nall;
        if (u != v) g.edges.emplace_back(u, v);
      }
      try {
        g.validate();
        return g;
      } catch (const std::invalid_argument&) {
      }
    }
  };
  // (i) min_cut equals brute force up to |V_b| = 12
  for (int rep = 0; rep < 150 && pass; ++rep) {
    NetworkGraph g = random_graph(3, 1 + rep % 12);
    auto bulk = g.bulk_ids();
    std::vector<size_t> region;
    for (size_t v : g.boundary_ids())
      if (rng() % 2) region.push_back(v);
    CutReport r = min_cut(g, region);
    int64_t best = INT64_MAX;
    for (size_t mask = 0; mask < (size_t(1) << bulk.size()); ++mask) {
      std::vector<size_t> w(region.begin(), region.end());
      for (size_t i = 0; i < bulk.size(); ++i)
        if (mask >> i & 1) w.push_back(bulk[i]);
      best = std::min(best, boundary_edge_count(g, w));
    }
    if (best != r.min_cut_edges) {
      pass = false;
      why = "max-flow disagreed with brute force";
    }
  }
  // (ii) disjointness lemma on 500 random multigraphs
  int done = 0;
  for (int rep = 0; rep < 3000 && done < 500 && pass; ++rep) {
    NetworkGraph g = random_graph(4, 1 + rep % 5);
    std::vector<size_t> ra, rb;
    for (size_t v : g.boundary_ids()) {
      switch (rng() % 3) {
        case 0: ra.push_back(v); break;
        case 1: rb.push_back(v); break;
        default: break;
      }
    }
    if (ra.empty() || rb.empty()) continue;
    if (!disjointness_check(g, ra, rb)) {
      pass = false;
      why = "disjointness lemma violated";
    }
    ++done;
  }
  if (done < 500 && pass) {
    pass = false;
    why = "not enough disjointness instances";
  }
  // (iii) E0 N = S_RT sum and the degeneracy bound on enumerable instances
  for (int rep = 0; rep < 40 && pass; ++rep) {
    uint32_t p = rep % 2 ? 2 : 3;
    NetworkGraph g = random_graph(3, 1 + rep % 3);
    g.field = PrimeField(p);
    auto boundary = g.boundary_ids();
    std::vector<size_t> a{boundary[0]}, b{boundary[1]}, c{boundary[2]};
    auto gs = ground_state(g, a, b, c);
    CutReport ra = min_cut(g, a), rb = min_cut(g, b), rc = min_cut(g, c);
    if (gs.e0 * int64_t(g.bond_exponent) != ra.s_rt + rb.s_rt + rc.s_rt) {
      pass = false;
      why = "E0 N != S_RT sum";
    }
    ResidualMax rm = max_residual_components(g, ra, rb, rc);
    if (!rm.found_disjoint_triple) {
      pass = false;
      why = "no disjoint minimal-cut triple";
    } else {
      BigInt bound = ra.num_min_cuts * rb.num_min_cuts * rc.num_min_cuts;
      for (int64_t i = 0; i < rm.max_components; ++i) bound *= (p + 1);
      if (gs.degeneracy > bound) {
        pass = false;
        why = "degeneracy above (p+1)^{#_b} #_A #_B #_C";
      }
    }
  }
  report(10, pass, "geometry lemmas (flow duality, disjoint cuts, E0)", why);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d/10 criteria passed in %.1fs\n", 10 - failures,
              seconds_since(t0));
  return failures;
}

#include "stabnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stabnet/dense.hpp"
#include "stabnet/rng.hpp"

namespace stabnet {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string to_json(const Table& t, const RunConfig& cfg) {
  nlohmann::json j;
  j["schema"] = 1;
  nlohmann::json jc;
  jc["command"] = cfg.command;
  jc["graph"] = cfg.graph_path;
  jc["regions"] = cfg.region_names;
  // The worker count never affects results, so it is not echoed: output
  // bytes are a function of the logical configuration alone.
  jc["seed"] = cfg.seed;
  jc["trials"] = cfg.trials;
  jc["format"] = cfg.format;
  if (cfg.p_override) jc["p"] = *cfg.p_override;
  if (cfg.n_override) jc["N"] = *cfg.n_override;
  j["config"] = jc;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r;
    for (size_t i = 0; i < t.columns.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(r);
  }
  j["rows"] = rows;
  nlohmann::json summary;
  for (const auto& [k, v] : t.summary) summary[k] = v;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

std::string render(const Table& t, const RunConfig& cfg) {
  return cfg.format == "json" ? to_json(t, cfg) : to_csv(t);
}

NetworkGraph load_graph(const RunConfig& cfg) {
  NetworkGraph g = NetworkGraph::from_file(cfg.graph_path);
  if (cfg.p_override) g.field = PrimeField(*cfg.p_override);
  if (cfg.n_override) g.bond_exponent = *cfg.n_override;
  g.validate();
  return g;
}

namespace {

double log_base_p(double v, uint32_t p) {
  return std::log(v) / std::log(double(p));
}

std::vector<size_t> region_vertices_checked(const NetworkGraph& g,
                                            const std::string& name) {
  return g.region(name);
}

void require_boundary_partition(const NetworkGraph& g,
                                const std::vector<std::vector<size_t>>& parts) {
  std::set<size_t> seen;
  size_t total = 0;
  for (const auto& part : parts) {
    for (size_t v : part) {
      seen.insert(v);
      ++total;
    }
  }
  auto boundary = g.boundary_ids();
  if (seen.size() != total || seen.size() != boundary.size())
    throw std::invalid_argument(
        "regions must partition the boundary vertex set");
  for (size_t v : boundary)
    if (!seen.count(v))
      throw std::invalid_argument("region partition misses vertex " +
                                  g.vertex_names[v]);
}

}  // namespace

// ---------------------------------------------------------------- rt

RtResult run_rt(const NetworkGraph& g, uint64_t seed, int64_t trials,
                int workers) {
  std::vector<std::string> names;
  std::vector<std::vector<size_t>> qudit_sets;
  std::vector<CutReport> cuts;
  for (const auto& [name, verts] : g.regions) {
    names.push_back(name);
    qudit_sets.push_back(boundary_subsystem(g, verts));
    cuts.push_back(min_cut(g, verts));
  }
  size_t nr = names.size();
  int64_t min_trace_value = -g.bulk_qudit_count();

  std::vector<int8_t> status(trials, 0);  // 0 zero, 1 nonzero, 2 min-trace
  std::vector<std::vector<int64_t>> s_values(trials);
  parallel_for_trials(trials, workers, [&](int64_t i) {
    std::mt19937_64 rng(trial_seed(seed, uint64_t(i)));
    NetworkState st = build_random_network(g, rng);
    if (st.is_zero()) return;
    status[i] = st.log_trace == min_trace_value ? 2 : 1;
    auto& row = s_values[i];
    row.resize(nr);
    for (size_t r = 0; r < nr; ++r)
      row[r] = entropy(*st.tableau, qudit_sets[r]);
  });

  RtResult out;
  out.trials = trials;
  out.epsilon = std::pow(2.0, double(g.vertex_names.size())) /
                std::pow(double(g.field.p), double(g.bond_exponent));
  std::vector<int64_t> sum_nonzero(nr, 0), sum_min(nr, 0), maxs(nr, 0);
  std::vector<int64_t> violations(nr, 0);
  for (int64_t i = 0; i < trials; ++i) {
    if (status[i] == 0) continue;
    ++out.nonzero;
    bool minimal = status[i] == 2;
    if (minimal) ++out.min_trace;
    for (size_t r = 0; r < nr; ++r) {
      int64_t s = s_values[i][r];
      sum_nonzero[r] += s;
      if (minimal) sum_min[r] += s;
      maxs[r] = std::max(maxs[r], s);
      if (s > cuts[r].s_rt) ++violations[r];
    }
  }
  for (size_t r = 0; r < nr; ++r) {
    RtRegionStats st;
    st.name = names[r];
    st.s_rt = cuts[r].s_rt;
    st.num_min_cuts = cuts[r].counts_available ? cuts[r].num_min_cuts : -1;
    st.mean_s_nonzero =
        out.nonzero ? double(sum_nonzero[r]) / double(out.nonzero) : 0.0;
    st.mean_s_min_trace =
        out.min_trace ? double(sum_min[r]) / double(out.min_trace) : 0.0;
    st.gap = double(st.s_rt) - st.mean_s_nonzero;
    double cut_term =
        st.num_min_cuts > 0 ? log_base_p(double(st.num_min_cuts), g.field.p)
                            : 0.0;
    st.lower_bound = double(st.s_rt) - cut_term - 4.0 * out.epsilon;
    st.max_s = maxs[r];
    st.upper_violations = violations[r];
    out.regions.push_back(std::move(st));
  }
  return out;
}

Table rt_table(const RtResult& r) {
  Table t;
  t.columns = {"region",         "s_rt",             "num_min_cuts",
               "mean_s_nonzero", "mean_s_min_trace", "gap",
               "lower_bound",    "max_s",            "upper_violations"};
  for (const auto& s : r.regions) {
    t.rows.push_back({s.name, std::to_string(s.s_rt),
                      std::to_string(s.num_min_cuts),
                      format_double(s.mean_s_nonzero),
                      format_double(s.mean_s_min_trace), format_double(s.gap),
                      format_double(s.lower_bound), std::to_string(s.max_s),
                      std::to_string(s.upper_violations)});
  }
  t.summary = {{"trials", std::to_string(r.trials)},
               {"nonzero", std::to_string(r.nonzero)},
               {"min_trace", std::to_string(r.min_trace)},
               {"epsilon", format_double(r.epsilon)}};
  return t;
}

// ---------------------------------------------------------------- ghz

GhzResult run_ghz(const NetworkGraph& g, const std::string& region_a,
                  const std::string& region_b, const std::string& region_c,
                  uint64_t seed, int64_t trials, int workers) {
  auto va = region_vertices_checked(g, region_a);
  auto vb = region_vertices_checked(g, region_b);
  auto vc = region_vertices_checked(g, region_c);
  require_boundary_partition(g, {va, vb, vc});
  auto qa = boundary_subsystem(g, va);
  auto qb = boundary_subsystem(g, vb);
  auto qc = boundary_subsystem(g, vc);
  int64_t min_trace_value = -g.bulk_qudit_count();

  GhzResult out;
  out.trials = trials;
  out.trial_rows.resize(trials);
  parallel_for_trials(trials, workers, [&](int64_t i) {
    std::mt19937_64 rng(trial_seed(seed, uint64_t(i)));
    NetworkState st = build_random_network(g, rng);
    GhzTrial& row = out.trial_rows[i];
    if (st.is_zero()) {
      row.zero = true;
      return;
    }
    row.log_trace = st.log_trace;
    row.content = ghz_content(*st.tableau, qa, qb, qc);
  });
  int64_t sum_g = 0, sum_g2 = 0, sum_g_min = 0;
  for (const auto& row : out.trial_rows) {
    if (row.zero) continue;
    ++out.nonzero;
    sum_g += row.content.g;
    sum_g2 += row.content.g * row.content.g;
    out.max_g = std::max(out.max_g, row.content.g);
    if (row.log_trace == min_trace_value) {
      ++out.min_trace;
      sum_g_min += row.content.g;
    }
  }
  if (out.nonzero > 0) {
    out.mean_g_nonzero = double(sum_g) / double(out.nonzero);
    double var = double(sum_g2) / double(out.nonzero) -
                 out.mean_g_nonzero * out.mean_g_nonzero;
    out.se_g_nonzero =
        out.nonzero > 1 ? std::sqrt(std::max(var, 0.0) / double(out.nonzero))
                        : 0.0;
  }
  if (out.min_trace > 0)
    out.mean_g_min_trace = double(sum_g_min) / double(out.min_trace);
  out.bound = ghz_count_bound(g, va, vb, vc);
  return out;
}

Table ghz_table(const GhzResult& r) {
  Table t;
  t.columns = {"trial", "zero", "log_trace", "a", "b", "c", "g"};
  for (size_t i = 0; i < r.trial_rows.size(); ++i) {
    const auto& row = r.trial_rows[i];
    t.rows.push_back({std::to_string(i), row.zero ? "1" : "0",
                      std::to_string(row.zero ? 0 : row.log_trace),
                      std::to_string(row.content.a),
                      std::to_string(row.content.b),
                      std::to_string(row.content.c),
                      std::to_string(row.content.g)});
  }
  t.summary = {
      {"trials", std::to_string(r.trials)},
      {"nonzero", std::to_string(r.nonzero)},
      {"min_trace", std::to_string(r.min_trace)},
      {"mean_g_nonzero", format_double(r.mean_g_nonzero)},
      {"se_g_nonzero", format_double(r.se_g_nonzero)},
      {"mean_g_min_trace", format_double(r.mean_g_min_trace)},
      {"max_g", std::to_string(r.max_g)},
      {"ghz_count_bound", format_double(r.bound.total)},
      {"ghz_bound_delta", format_double(r.bound.delta)},
      {"hash_b", std::to_string(r.bound.hash_b)},
      {"num_cuts_product",
       std::to_string(r.bound.num_cuts_a * r.bound.num_cuts_b *
                      r.bound.num_cuts_c)},
  };
  return t;
}

// ---------------------------------------------------------- fourpartite

FourpartiteResult run_fourpartite(const NetworkGraph& g,
                                  const std::vector<std::string>& regions,
                                  uint64_t seed, int64_t trials, int workers) {
  if (regions.size() != 4)
    throw std::invalid_argument("fourpartite: need exactly 4 regions");
  std::array<std::vector<size_t>, 4> parts;
  std::vector<std::vector<size_t>> vert_parts;
  for (int i = 0; i < 4; ++i) {
    auto verts = region_vertices_checked(g, regions[i]);
    vert_parts.push_back(verts);
    parts[i] = boundary_subsystem(g, verts);
  }
  require_boundary_partition(g, vert_parts);

  FourpartiteResult out;
  out.trials = trials;
  out.trial_rows.resize(trials);
  parallel_for_trials(trials, workers, [&](int64_t i) {
    std::mt19937_64 rng(trial_seed(seed, uint64_t(i)));
    NetworkState st = build_random_network(g, rng);
    auto& row = out.trial_rows[i];
    if (st.is_zero()) {
      row.zero = true;
      return;
    }
    row.log_trace = st.log_trace;
    row.report = fourpartite_report(*st.tableau, parts);
  });
  int64_t min_trace_value = -g.bulk_qudit_count();
  double sum_i3 = 0;
  int64_t residual_entries = 0, residual_within = 0;
  for (const auto& row : out.trial_rows) {
    if (row.zero) continue;
    ++out.nonzero;
    if (row.log_trace == min_trace_value) ++out.min_trace;
    sum_i3 += double(row.report.i3);
    double target = -double(row.report.i3) / 2.0;
    for (int i = 0; i < 4; ++i) {
      double gap = std::abs(double(row.report.residual_entropies[i]) - target);
      out.max_residual_gap = std::max(out.max_residual_gap, gap);
      ++residual_entries;
      if (gap <= 2.0) ++residual_within;
    }
    if (double(row.report.i3) > 3.0 * double(row.report.g_max))
      ++out.monogamy_violations;
  }
  if (out.nonzero) {
    out.mean_i3 = sum_i3 / double(out.nonzero);
    out.frac_within_two = double(residual_within) / double(residual_entries);
  }
  return out;
}

Table fourpartite_table(const FourpartiteResult& r) {
  Table t;
  t.columns = {"trial", "zero", "log_trace", "t12", "t13", "t14",
               "t23",   "t24",  "t34",       "i3",  "res1", "res2",
               "res3",  "res4", "g_max"};
  for (size_t i = 0; i < r.trial_rows.size(); ++i) {
    const auto& row = r.trial_rows[i];
    const auto& rep = row.report;
    t.rows.push_back(
        {std::to_string(i), row.zero ? "1" : "0",
         std::to_string(row.zero ? 0 : row.log_trace),
         std::to_string(rep.t[0][1]), std::to_string(rep.t[0][2]),
         std::to_string(rep.t[0][3]), std::to_string(rep.t[1][2]),
         std::to_string(rep.t[1][3]), std::to_string(rep.t[2][3]),
         std::to_string(rep.i3), std::to_string(rep.residual_entropies[0]),
         std::to_string(rep.residual_entropies[1]),
         std::to_string(rep.residual_entropies[2]),
         std::to_string(rep.residual_entropies[3]),
         std::to_string(rep.g_max)});
  }
  t.summary = {
      {"trials", std::to_string(r.trials)},
      {"nonzero", std::to_string(r.nonzero)},
      {"min_trace", std::to_string(r.min_trace)},
      {"max_residual_gap", format_double(r.max_residual_gap)},
      {"frac_within_two", format_double(r.frac_within_two)},
      {"monogamy_violations", std::to_string(r.monogamy_violations)},
      {"mean_i3", format_double(r.mean_i3)},
  };
  return t;
}

// ------------------------------------------------------------ spinmodel

BigRational sample_pt3_unnormalized(const NetworkGraph& g,
                                    const NetworkState& state,
                                    std::span<const size_t> region_a,
                                    std::span<const size_t> region_b) {
  if (state.is_zero()) return BigRational(0);
  int64_t m = pt_moment3(*state.tableau, region_a, region_b);
  return pow_rational(g.field.p, 3 * state.log_trace - m);
}

SpinModelRun run_spinmodel(const NetworkGraph& g, const std::string& region_a,
                           const std::string& region_b,
                           const std::string& region_c, uint64_t seed,
                           int64_t trials, int workers) {
  auto va = region_vertices_checked(g, region_a);
  auto vb = region_vertices_checked(g, region_b);
  auto vc = region_vertices_checked(g, region_c);
  require_boundary_partition(g, {va, vb, vc});
  SpinModelRun out;
  out.ground = ground_state(g, va, vb, vc);
  out.prediction = moment_prediction(g, va, vb, vc);
  out.bound = ghz_count_bound(g, va, vb, vc);
  out.s_rt_sum = min_cut(g, va).s_rt + min_cut(g, vb).s_rt +
                 min_cut(g, vc).s_rt;
  out.trials = trials;
  if (trials > 0) {
    auto qa = boundary_subsystem(g, va);
    auto qb = boundary_subsystem(g, vb);
    std::vector<BigRational> values(trials);
    parallel_for_trials(trials, workers, [&](int64_t i) {
      std::mt19937_64 rng(trial_seed(seed, uint64_t(i)));
      NetworkState st = build_random_network(g, rng);
      values[i] = sample_pt3_unnormalized(g, st, qa, qb);
    });
    for (const auto& v : values) {
      out.mc_sum += v;
      out.mc_sum_sq += v * v;
    }
    BigRational mean = out.mc_sum / trials;
    BigRational var = out.mc_sum_sq / trials - mean * mean;
    out.mc_mean = rational_to_double(mean);
    double var_d = std::max(rational_to_double(var), 0.0);
    out.mc_se = std::sqrt(var_d / double(trials));
    double pred = rational_to_double(out.prediction.prediction);
    out.z_score = out.mc_se > 0 ? (out.mc_mean - pred) / out.mc_se : 0.0;
  }
  return out;
}

Table spinmodel_table(const SpinModelRun& r) {
  Table t;
  t.columns = {"e0",          "degeneracy", "s_rt_sum", "prediction",
               "loose_bound", "mc_mean",    "mc_se",    "z_score",
               "trials",      "ghz_count_bound"};
  t.rows.push_back({std::to_string(r.ground.e0), r.ground.degeneracy.str(),
                    std::to_string(r.s_rt_sum),
                    rational_to_string(r.prediction.prediction),
                    rational_to_string(r.prediction.loose_bound),
                    format_double(r.mc_mean), format_double(r.mc_se),
                    format_double(r.z_score), std::to_string(r.trials),
                    format_double(r.bound.total)});
  t.summary = {
      {"prediction_double",
       format_double(rational_to_double(r.prediction.prediction))},
      {"degeneracy", r.ground.degeneracy.str()},
      {"e0", std::to_string(r.ground.e0)},
  };
  return t;
}

// -------------------------------------------------------------- moments

std::vector<MomentReport> run_moments(uint32_t p, int n,
                                      const std::string& mode, int64_t trials,
                                      uint64_t seed) {
  PrimeField f(p);
  std::vector<MomentReport> reports;
  bool formula_ok = p == 2 || n >= 2;
  if (mode == "exhaustive") {
    reports.push_back(second_moment_check_exhaustive(size_t(n), f));
    if (formula_ok)
      reports.push_back(third_moment_check_exhaustive(size_t(n), f));
  } else {
    reports.push_back(second_moment_check_mc(size_t(n), f, trials, seed));
    if (formula_ok)
      reports.push_back(third_moment_check_mc(size_t(n), f, trials, seed));
  }
  if (formula_ok) {
    reports.push_back(commutant_check(size_t(n), f, 10, seed + 1));
    // For p = 2 every R(T) is a permutation operator and commutes with any
    // U^{tensor 3}, Clifford or not, so a non-Clifford control cannot fail.
    if (p != 2) reports.push_back(negative_control_check(size_t(n), f));
    if (n >= 2) {
      IndependenceReport ir = independence_check(size_t(n), f);
      MomentReport rep;
      rep.check = "independence";
      rep.p = p;
      rep.n = n;
      rep.terms_checked = int64_t(2 * p + 2);
      rep.tolerance = 0;
      rep.max_abs_deviation = ir.pass ? 0 : 1;
      rep.pass = ir.pass;
      reports.push_back(rep);
    }
  }
  return reports;
}

Table moments_table(const std::vector<MomentReport>& reports) {
  Table t;
  t.columns = {"check", "p", "n", "max_abs_deviation", "terms_checked",
               "tolerance", "pass"};
  int64_t fails = 0;
  for (const auto& r : reports) {
    t.rows.push_back({r.check, std::to_string(r.p), std::to_string(r.n),
                      format_double(r.max_abs_deviation),
                      std::to_string(r.terms_checked),
                      format_double(r.tolerance), r.pass ? "1" : "0"});
    fails += r.pass ? 0 : 1;
  }
  t.summary = {{"checks", std::to_string(int64_t(reports.size()))},
               {"failures", std::to_string(fails)}};
  return t;
}

}  // namespace stabnet

#ifndef STABNET_EXPERIMENTS_HPP
#define STABNET_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabnet/entropy.hpp"
#include "stabnet/geometry.hpp"
#include "stabnet/graph.hpp"
#include "stabnet/moments.hpp"
#include "stabnet/network.hpp"
#include "stabnet/spin_model.hpp"

namespace stabnet {

/// One experiment invocation; identical configs produce identical output
/// bytes regardless of the worker count.
struct RunConfig {
  std::string command;
  std::string graph_path;
  std::vector<std::string> region_names;
  uint64_t seed = 1;
  int64_t trials = 1000;
  std::optional<uint32_t> p_override;
  std::optional<uint32_t> n_override;
  std::string out_path;  // empty = stdout
  std::string format = "csv";
  int workers = 1;
  // moments-only knobs
  uint32_t moments_p = 3;
  int moments_n = 2;
  std::string moments_mode = "exhaustive";
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
};

std::string to_csv(const Table& t);
std::string to_json(const Table& t, const RunConfig& cfg);
std::string render(const Table& t, const RunConfig& cfg);

std::string format_double(double v);

NetworkGraph load_graph(const RunConfig& cfg);

// ---- rt ----

struct RtRegionStats {
  std::string name;
  int64_t s_rt = 0;
  int64_t num_min_cuts = 0;
  double mean_s_nonzero = 0;
  double mean_s_min_trace = 0;
  double gap = 0;          // s_rt - mean_s_nonzero
  double lower_bound = 0;  // s_rt - log_p #_A - 4 eps
  int64_t max_s = 0;
  int64_t upper_violations = 0;  // samples with S > S_RT
};

struct RtResult {
  std::vector<RtRegionStats> regions;
  int64_t trials = 0, nonzero = 0, min_trace = 0;
  double epsilon = 0;  // 2^{|V|} / p^N
};

RtResult run_rt(const NetworkGraph& g, uint64_t seed, int64_t trials,
                int workers);
Table rt_table(const RtResult& r);

// ---- ghz ----

struct GhzTrial {
  bool zero = false;
  int64_t log_trace = 0;
  GhzContent content;
};

struct GhzResult {
  std::vector<GhzTrial> trial_rows;
  int64_t trials = 0, nonzero = 0, min_trace = 0;
  double mean_g_nonzero = 0, se_g_nonzero = 0;
  double mean_g_min_trace = 0;
  int64_t max_g = 0;
  GhzCountBound bound;
};

GhzResult run_ghz(const NetworkGraph& g, const std::string& region_a,
                  const std::string& region_b, const std::string& region_c,
                  uint64_t seed, int64_t trials, int workers);
Table ghz_table(const GhzResult& r);

// ---- fourpartite ----

struct FourpartiteTrial {
  bool zero = false;
  int64_t log_trace = 0;
  FourpartiteReport report;
};

struct FourpartiteResult {
  std::vector<FourpartiteTrial> trial_rows;
  int64_t trials = 0, nonzero = 0, min_trace = 0;
  double max_residual_gap = 0;   // max |residual - (-I3/2)|
  double frac_within_two = 0;    // fraction of residual entries within 2
  int64_t monogamy_violations = 0;  // samples with I3 > 3 g_max
  double mean_i3 = 0;
};

FourpartiteResult run_fourpartite(const NetworkGraph& g,
                                  const std::vector<std::string>& regions,
                                  uint64_t seed, int64_t trials, int workers);
Table fourpartite_table(const FourpartiteResult& r);

// ---- spinmodel ----

struct SpinModelRun {
  GroundStateResult ground;
  MomentPrediction prediction;
  GhzCountBound bound;
  int64_t s_rt_sum = 0;
  // Monte Carlo estimate of <tr (Psi_AB^{T_B})^3>.
  int64_t trials = 0;
  BigRational mc_sum = 0, mc_sum_sq = 0;
  double mc_mean = 0, mc_se = 0, z_score = 0;
};

SpinModelRun run_spinmodel(const NetworkGraph& g, const std::string& region_a,
                           const std::string& region_b,
                           const std::string& region_c, uint64_t seed,
                           int64_t trials, int workers);
Table spinmodel_table(const SpinModelRun& r);

/// tr((Psi_AB^{T_B})^3) of one sample as an exact rational (0 for Psi = 0).
BigRational sample_pt3_unnormalized(const NetworkGraph& g,
                                    const NetworkState& state,
                                    std::span<const size_t> region_a,
                                    std::span<const size_t> region_b);

// ---- moments ----

std::vector<MomentReport> run_moments(uint32_t p, int n,
                                      const std::string& mode, int64_t trials,
                                      uint64_t seed);
Table moments_table(const std::vector<MomentReport>& reports);

// ---- verify ----

struct VerifyOptions {
  bool corrupt_distance = false;  // negative-control hook
};

struct VerifyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

std::vector<VerifyCheck> run_verify(const VerifyOptions& opt);

}  // namespace stabnet

#endif

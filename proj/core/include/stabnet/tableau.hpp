#ifndef STABNET_TABLEAU_HPP
#define STABNET_TABLEAU_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stabnet/fp.hpp"
#include "stabnet/weyl.hpp"

namespace stabnet {

/// Marker for the annihilated state Psi = 0.
struct ZeroState {};

/// Generator description of a (possibly subnormalized) stabilizer operator
///
///   Psi = p^{log_trace - n} * sum over the signed group S,
///
/// so tr Psi = p^{log_trace} exactly. Generators are rows [x | z] of a
/// k x 2n matrix over GF(p), with one tracked phase each; all generators
/// commute, are independent, and k <= n (k = n for pure states).
class Tableau {
public:
  Tableau() = default;
  Tableau(uint32_t p, size_t n);  // empty group: maximally mixed, trace p^n

  static Tableau from_generators(uint32_t p, size_t n,
                                 const std::vector<WeylOp>& gens,
                                 int64_t log_trace);

  // |0...0> on n qudits.
  static Tableau zeros(uint32_t p, size_t n);
  // (1/sqrt p) sum_i |ii>.
  static Tableau bell_pair(uint32_t p);
  // (1/sqrt p) sum_i |iii>.
  static Tableau ghz(uint32_t p);

  uint32_t p() const { return p_; }
  size_t n() const { return n_; }
  size_t k() const { return phases_.size(); }
  int64_t log_trace() const { return log_trace_; }
  void set_log_trace(int64_t t) { log_trace_ = t; }
  bool pure() const { return k() == n_; }

  const FpMatrix& generators() const { return gens_; }
  const std::vector<uint32_t>& phases() const { return phases_; }
  WeylOp generator(size_t i) const;

  /// Throws std::logic_error when any tableau invariant fails.
  void validate() const;

  /// The group element g_0^{c_0} ... g_{k-1}^{c_{k-1}} with exact phase.
  WeylOp element_from_exponents(std::span<const uint32_t> c) const;

  /// All p^k group elements (mixed-radix order over exponents).
  std::vector<WeylOp> group_elements(size_t cap = size_t(1) << 22) const;

  /// Serialization of the canonical form; equal keys iff equal signed groups.
  std::string canonical_key() const;

  bool operator==(const Tableau& other) const;

private:
  uint32_t p_ = 2;
  size_t n_ = 0;
  FpMatrix gens_;                 // k x 2n
  std::vector<uint32_t> phases_;  // k
  int64_t log_trace_ = 0;

  friend Tableau canonicalize(const Tableau&);
  friend std::optional<Tableau> postselect(const Tableau&, const WeylOp&);
  friend Tableau tensor(const Tableau&, const Tableau&);
  friend Tableau permute_qudits(const Tableau&, std::span<const size_t>);
  friend Tableau restrict_trace_out(const Tableau&, std::span<const size_t>);
};

/// Unique representative per signed group: generator rows in RREF over the
/// columns x_0..x_{n-1}, z_0..z_{n-1} with the group-determined phases.
Tableau canonicalize(const Tableau& t);

/// Applies the projector (1/p) sum_j g^j to the represented operator and
/// updates log_trace exactly; nullopt when the result is zero.
/// g must have a stabilizer-eligible phase (order dividing p).
std::optional<Tableau> postselect(const Tableau& t, const WeylOp& g);

Tableau tensor(const Tableau& a, const Tableau& b);

/// Relabels qudits: new qudit perm[i] carries old qudit i.
Tableau permute_qudits(const Tableau& t, std::span<const size_t> perm);

/// Partial trace over the sorted qudit subset `traced`; log_trace preserved.
Tableau restrict_trace_out(const Tableau& t, std::span<const size_t> traced);

/// Uniformly random pure stabilizer state (k = n, log_trace = 0).
Tableau sample_uniform(size_t n, uint32_t p, std::mt19937_64& rng);

/// Every pure stabilizer state exactly once (canonical forms).
/// Throws std::length_error when the state count would exceed `cap`.
std::vector<Tableau> enumerate_all(size_t n, uint32_t p,
                                   size_t cap = 2'000'000);

/// Number of pure stabilizer states: p^n * prod_{i=1..n} (p^i + 1).
size_t count_stabilizer_states(size_t n, uint32_t p);

}  // namespace stabnet

#endif

#ifndef STABNET_MOMENTS_HPP
#define STABNET_MOMENTS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stabnet/dense.hpp"
#include "stabnet/sigma3.hpp"

namespace stabnet {

/// R(T) = r(T)^{tensor n} as a sparse 0/1 pattern on the replica-major basis
/// ((C^p)^n)^{tensor 3}: entry (v1 v2 v3, w1 w2 w3) is 1 iff for every qudit
/// i the pair ((v1_i,v2_i,v3_i),(w1_i,w2_i,w3_i)) lies in T.
struct RPattern {
  size_t dim = 0;  // p^{3n}
  std::vector<std::pair<size_t, size_t>> ones;
};

RPattern r_pattern(const SubspaceT& t, size_t n);
Eigen::MatrixXd r_matrix(const SubspaceT& t, size_t n);

/// Max |entry| of R U - U R without forming dense products of R.
double commutator_max_abs(const RPattern& r, const CMat& u);

struct MomentReport {
  std::string check;
  uint32_t p = 2;
  int n = 1;
  double max_abs_deviation = 0;
  int64_t terms_checked = 0;
  double tolerance = 0;
  bool pass = false;
};

/// sum_{T in Sigma_3(p)} R(T) / (p^n (p^n+1)(p^n+p)). Rejects n = 1 for odd
/// p (outside the formula's hypothesis); trace is exactly 1.
Eigen::MatrixXd third_moment_formula(size_t n, const PrimeField& f);

Eigen::MatrixXcd empirical_third_moment_exhaustive(size_t n,
                                                   const PrimeField& f);
Eigen::MatrixXcd empirical_third_moment_mc(size_t n, const PrimeField& f,
                                           int64_t trials, uint64_t seed);

/// |V><V|^{tensor k} accumulated over states; the k = 2 variant backs the
/// 2-design checks.
Eigen::MatrixXcd empirical_second_moment_exhaustive(size_t n,
                                                    const PrimeField& f);
Eigen::MatrixXcd empirical_second_moment_mc(size_t n, const PrimeField& f,
                                            int64_t trials, uint64_t seed);
/// (I + F) / (D (D + 1)) with F the swap on two copies.
Eigen::MatrixXd second_moment_formula(size_t n, const PrimeField& f);

/// Random Clifford unitary as a dense matrix: a word in Fourier, phase,
/// multiplication, controlled-add and Weyl shift gates.
Eigen::MatrixXcd random_clifford_dense(size_t n, const PrimeField& f,
                                       size_t word_length,
                                       std::mt19937_64& rng);

/// Diagonal cubic-phase gate on qudit 0 (T-type); deliberately non-Clifford.
Eigen::MatrixXcd non_clifford_gate(size_t n, const PrimeField& f);

/// [R(T), U^{tensor 3}] = 0 for sampled Clifford words, all T.
MomentReport commutant_check(size_t n, const PrimeField& f, int64_t samples,
                             uint64_t seed, size_t word_length = 20);

/// Same machinery against the non-Clifford control; pass = some T fails.
MomentReport negative_control_check(size_t n, const PrimeField& f);

struct IndependenceReport {
  bool gram_nonsingular = false;
  bool gram_matches_metric = false;  // entries p^{3n - n d(T_x,T_y)}
  bool dual_vectors_identify = false;
  bool pass = false;
};

/// Lemma-style linear independence of {R(T)}: Gram nonsingularity plus the
/// dual-vector identification <v1|<v2|<0|^{n-2} |T'>^{n} = delta_{T,T'}.
IndependenceReport independence_check(size_t n, const PrimeField& f);

MomentReport second_moment_check_exhaustive(size_t n, const PrimeField& f);
MomentReport second_moment_check_mc(size_t n, const PrimeField& f,
                                    int64_t trials, uint64_t seed);
MomentReport third_moment_check_exhaustive(size_t n, const PrimeField& f);
MomentReport third_moment_check_mc(size_t n, const PrimeField& f,
                                   int64_t trials, uint64_t seed);

}  // namespace stabnet

#endif

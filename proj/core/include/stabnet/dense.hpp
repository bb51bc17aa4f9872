#ifndef STABNET_DENSE_HPP
#define STABNET_DENSE_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "stabnet/weyl.hpp"

namespace stabnet {

class Tableau;
struct NetworkGraph;

// Brute-force reference path. Qudit 0 is the most significant digit of the
// computational-basis index throughout.

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct DenseState {
  uint32_t p;
  size_t n;
  CVec amplitudes;  // length p^n
};

inline size_t pow_sz(uint32_t p, size_t n) {
  size_t d = 1;
  for (size_t i = 0; i < n; ++i) d *= p;
  return d;
}

/// Dense matrix of a signed Weyl operator under the shared phase convention.
CMat weyl_matrix(const WeylOp& w);

/// Simultaneous +1-eigenvector of all generators of a pure tableau,
/// normalized, global phase fixed (first nonzero amplitude real positive).
DenseState tableau_to_dense(const Tableau& t);

/// The operator p^{log_trace-n} sum_{s in S} s represented by any tableau.
CMat tableau_to_dense_operator(const Tableau& t);

/// rho on n qudits reduced to the sorted subset `keep`.
CMat partial_trace(const CMat& rho, uint32_t p, size_t n,
                   std::span<const size_t> keep);

/// Von Neumann entropy of the reduced state on `subset`, in log_p units.
double dense_entropy(const CMat& rho, uint32_t p, size_t n,
                     std::span<const size_t> subset);

/// tr((rho_AB^{T_B})^3) for rho given on the qudits A u B (sorted indices
/// into rho's qudit ordering).
double dense_pt3(const CMat& rho_ab, uint32_t p, size_t n_ab,
                 std::span<const size_t> b_positions);

/// Partial transpose of rho on the given qudit positions.
CMat dense_partial_transpose(const CMat& rho, uint32_t p, size_t n,
                             std::span<const size_t> subset);

/// Contracts the edge Bell pairs of a network against explicit bulk vertex
/// tensors (one per bulk vertex, ordered by bulk vertex id). Returns the
/// unnormalized boundary vector in the network module's qudit ordering.
CVec dense_contract(const NetworkGraph& g,
                    const std::vector<CVec>& bulk_tensors);

}  // namespace stabnet

#endif

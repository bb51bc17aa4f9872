#ifndef STABNET_SIGMA3_HPP
#define STABNET_SIGMA3_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stabnet/fp.hpp"

namespace stabnet {

/// A 3-dimensional Lagrangian stochastic subspace of F_p^3 + F_p^3: one spin
/// value of the GHZ spin model. Equality is canonical-RREF equality of the
/// bases; labels are presentation only.
struct SubspaceT {
  FpMatrix basis;  // 3x6 canonical RREF, rows span T
  bool odd = false;
  std::string label;

  uint32_t p() const { return basis.p(); }
  /// Membership test for (x, y) with |x| = |y| = 3.
  bool contains(std::span<const uint32_t> v) const;
};

/// The 2p+2 elements of Sigma_3(p). Fixed order: index 0 is the identity
/// (diagonal) subspace, 1 is zeta, 2 is zeta^{-1}, then the remaining even
/// elements, then the odd ones.
std::vector<SubspaceT> build_sigma3(const PrimeField& f);

inline constexpr size_t kSigmaIdentity = 0;
inline constexpr size_t kSigmaZeta = 1;
inline constexpr size_t kSigmaZetaInv = 2;

/// d(T1,T2) = 3 - dim(T1 cap T2), in {0,1,2}.
int distance(const SubspaceT& t1, const SubspaceT& t2);

/// Definitional validator, independent of the construction: full rank 3,
/// beta vanishes on all row pairs, and the all-ones vector lies in the span.
bool is_lagrangian_stochastic(const FpMatrix& basis);

/// A handful of generators of the stochastic orthogonal group O_{3,3}(p):
/// beta-preserving maps fixing the all-ones vector. Used for invariance and
/// orbit spot-checks.
std::vector<FpMatrix> stochastic_orthogonal_generators(const PrimeField& f);

/// Image subspace O T (vectors mapped columnwise); returns canonical basis.
FpMatrix apply_to_subspace(const FpMatrix& o, const FpMatrix& basis);

/// True when O preserves beta and fixes the all-ones vector.
bool is_stochastic_orthogonal(const FpMatrix& o);

}  // namespace stabnet

#endif

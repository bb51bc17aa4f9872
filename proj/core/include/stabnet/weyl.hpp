#ifndef STABNET_WEYL_HPP
#define STABNET_WEYL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "stabnet/fp.hpp"

namespace stabnet {

// Phase conventions.
//
// Odd p:  W(x,z) = w^{-(1/2) x.z} X^x Z^z with w = exp(2 pi i / p); every
//         W(x,z) has order p and phases are tracked mod p (as powers of w).
// p = 2:  W(x,z) = i^{x.z} X^x Z^z (so W(1,1) = Y); every W(x,z) squares to
//         the identity and phases are tracked mod 4 (as powers of i).
//
// A WeylOp is phase_unit^phase * W(x,z).
struct WeylOp {
  uint32_t p = 2;
  uint32_t phase = 0;  // mod phase_modulus(p)
  std::vector<uint32_t> x, z;

  size_t n() const { return x.size(); }
  bool is_identity_vector() const;
  bool is_identity() const { return phase == 0 && is_identity_vector(); }

  static WeylOp identity(uint32_t p, size_t n);
  static WeylOp make(uint32_t p, std::vector<uint32_t> x,
                     std::vector<uint32_t> z, uint32_t phase = 0);
};

inline uint32_t phase_modulus(uint32_t p) { return p == 2 ? 4 : p; }

/// x_a.z_b - z_a.x_b mod p on packed [x|z] vectors of equal length 2n.
/// Zero iff the corresponding Weyl operators commute.
uint32_t symplectic_product(std::span<const uint32_t> a,
                            std::span<const uint32_t> b, uint32_t p);
uint32_t symplectic_product(const WeylOp& a, const WeylOp& b);

/// Exact product under the adopted convention.
WeylOp multiply(const WeylOp& a, const WeylOp& b);
WeylOp power(const WeylOp& a, uint64_t e);
WeylOp inverse(const WeylOp& a);

/// Partial transpose on the qudits in `subset` (sorted indices): negates the
/// shift part there and adjusts the phase so dense transposition agrees.
WeylOp partial_transpose(const WeylOp& a, std::span<const size_t> subset);

/// True when phase_unit^phase equals +1 scaled by an eigenvalue-compatible
/// root, i.e. the operator can stabilize a state: any phase for odd p,
/// phase in {0,2} for p = 2.
bool stabilizer_eligible_phase(const WeylOp& a);

}  // namespace stabnet

#endif

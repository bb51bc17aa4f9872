#ifndef STABNET_ENTROPY_HPP
#define STABNET_ENTROPY_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "stabnet/tableau.hpp"

namespace stabnet {

/// Entanglement entropy S(A) of a pure tableau in log_p units:
/// S(A) = |A| - n + rank of the generators restricted to the complement.
/// Exact (stabilizer spectra are flat).
int64_t entropy(const Tableau& t, std::span<const size_t> region);

int64_t mutual_information(const Tableau& t, std::span<const size_t> a,
                           std::span<const size_t> b);

/// I3 = I(A:B) + I(A:C) - I(A:BC).
int64_t tripartite_information(const Tableau& t, std::span<const size_t> a,
                               std::span<const size_t> b,
                               std::span<const size_t> c);

/// Exponent m with tr((rho_AB^{T_B})^3) = p^{-m}, for a pure state on the
/// partition A u B u C (C = all remaining qudits, possibly empty).
/// Exact integer arithmetic: the triple-product phase sum collapses to
/// m = 2 n_AB - 2 k_AB + rank(Q), Q the B-restricted symplectic Gram matrix
/// of the reduced stabilizer group.
int64_t pt_moment3(const Tableau& t, std::span<const size_t> a,
                   std::span<const size_t> b);

/// Same value by literal iteration over the reduced stabilizer subgroup in
/// triples (third element forced by the trace support condition), with exact
/// Weyl phase arithmetic. Enumeration capped at `pair_cap` element pairs.
int64_t pt_moment3_by_enumeration(const Tableau& t,
                                  std::span<const size_t> a,
                                  std::span<const size_t> b,
                                  size_t pair_cap = size_t(1) << 26);

/// Bell/GHZ normal-form counts (units of log_p): c pairs between A and B,
/// b between A and C, a between B and C, g GHZ triples.
struct GhzContent {
  int64_t a = 0, b = 0, c = 0, g = 0;
};

/// g = S(A)+S(B)+S(C) - m, then Bell counts from the mutual informations.
/// Throws std::logic_error on any non-integrality or negativity.
GhzContent ghz_content(const Tableau& t, std::span<const size_t> a,
                       std::span<const size_t> b, std::span<const size_t> c);

struct FourpartiteReport {
  std::array<std::array<int64_t, 4>, 4> t{};  // extractable Bell pairs
  int64_t i3 = 0;
  std::array<int64_t, 4> residual_entropies{};
  /// max g over the tripartitions ({i},{j},{k,l}); for the I3 <= 3*g_max check.
  int64_t g_max = 0;
};

/// Entropic accounting for a partition into four subsets; no extraction
/// circuit is synthesized.
FourpartiteReport fourpartite_report(
    const Tableau& t, const std::array<std::vector<size_t>, 4>& parts);

}  // namespace stabnet

#endif

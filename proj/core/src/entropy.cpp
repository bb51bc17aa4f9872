#include "stabnet/entropy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace stabnet {

namespace {

void check_subset(const Tableau& t, std::span<const size_t> region) {
  std::set<size_t> seen;
  for (size_t q : region) {
    if (q >= t.n()) throw std::invalid_argument("subset index out of range");
    if (!seen.insert(q).second)
      throw std::invalid_argument("subset has repeated indices");
  }
}

void check_disjoint(std::span<const size_t> a, std::span<const size_t> b) {
  std::set<size_t> sa(a.begin(), a.end());
  for (size_t q : b)
    if (sa.count(q)) throw std::invalid_argument("subsets overlap");
}

std::vector<size_t> complement(const Tableau& t,
                               std::span<const size_t> region) {
  std::vector<bool> in(t.n(), false);
  for (size_t q : region) in[q] = true;
  std::vector<size_t> out;
  for (size_t q = 0; q < t.n(); ++q)
    if (!in[q]) out.push_back(q);
  return out;
}

std::vector<size_t> concat(std::span<const size_t> a,
                           std::span<const size_t> b) {
  std::vector<size_t> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

int64_t entropy(const Tableau& t, std::span<const size_t> region) {
  if (!t.pure()) throw std::invalid_argument("entropy: tableau must be pure");
  check_subset(t, region);
  auto rest = complement(t, region);
  std::vector<size_t> cols;
  for (size_t q : rest) {
    cols.push_back(q);
    cols.push_back(t.n() + q);
  }
  int64_t r = int64_t(rank(t.generators().select_columns(cols)));
  return int64_t(region.size()) - int64_t(t.n()) + r;
}

int64_t mutual_information(const Tableau& t, std::span<const size_t> a,
                           std::span<const size_t> b) {
  check_disjoint(a, b);
  auto ab = concat(a, b);
  return entropy(t, a) + entropy(t, b) - entropy(t, ab);
}

int64_t tripartite_information(const Tableau& t, std::span<const size_t> a,
                               std::span<const size_t> b,
                               std::span<const size_t> c) {
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);
  auto bc = concat(b, c);
  return mutual_information(t, a, b) + mutual_information(t, a, c) -
         (entropy(t, a) + entropy(t, bc) - entropy(t, concat(a, bc)));
}

namespace {

// Reduced tableau on A u B plus the positions of B inside it.
std::pair<Tableau, std::vector<size_t>> reduce_to_ab(
    const Tableau& t, std::span<const size_t> a, std::span<const size_t> b) {
  if (!t.pure())
    throw std::invalid_argument("pt_moment3: tableau must be pure");
  check_subset(t, a);
  check_subset(t, b);
  check_disjoint(a, b);
  std::vector<size_t> ab = concat(a, b);
  std::vector<size_t> traced = complement(t, ab);
  Tableau red = restrict_trace_out(t, traced);
  // Kept qudits are renumbered in increasing original order.
  std::vector<size_t> kept;
  for (size_t q = 0; q < t.n(); ++q)
    if (std::find(traced.begin(), traced.end(), q) == traced.end())
      kept.push_back(q);
  std::set<size_t> bset(b.begin(), b.end());
  std::vector<size_t> b_pos;
  for (size_t i = 0; i < kept.size(); ++i)
    if (bset.count(kept[i])) b_pos.push_back(i);
  return {std::move(red), std::move(b_pos)};
}

int64_t checked_power_exponent(uint64_t value, uint32_t p) {
  int64_t e = 0;
  while (value > 1) {
    if (value % p != 0)
      throw std::logic_error("pt_moment3: sum is not a power of p");
    value /= p;
    ++e;
  }
  if (value != 1) throw std::logic_error("pt_moment3: zero phase sum");
  return e;
}

}  // namespace

int64_t pt_moment3(const Tableau& t, std::span<const size_t> a,
                   std::span<const size_t> b) {
  auto [red, b_pos] = reduce_to_ab(t, a, b);
  uint32_t p = red.p();
  size_t k = red.k();
  // Q_ij = symplectic product of generators i, j restricted to B.
  FpMatrix q(p, k, k);
  for (size_t i = 0; i < k; ++i) {
    WeylOp gi = red.generator(i);
    for (size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      WeylOp gj = red.generator(j);
      uint64_t pos = 0, neg = 0;
      for (size_t qd : b_pos) {
        pos += uint64_t(gi.x[qd]) * gj.z[qd];
        neg += uint64_t(gj.x[qd]) * gi.z[qd];
      }
      q(i, j) = static_cast<uint32_t>(((pos % p) + p - (neg % p)) % p);
    }
  }
  int64_t m = 2 * int64_t(red.n()) - 2 * int64_t(k) + int64_t(rank(q));
  if (m < 0 || m % 2 != 0)
    throw std::logic_error("pt_moment3: impossible exponent");
  return m;
}

int64_t pt_moment3_by_enumeration(const Tableau& t, std::span<const size_t> a,
                                  std::span<const size_t> b, size_t pair_cap) {
  auto [red, b_pos] = reduce_to_ab(t, a, b);
  uint32_t p = red.p();
  size_t k = red.k();
  size_t group_size = 1;
  for (size_t i = 0; i < k; ++i) group_size *= p;
  if (group_size * group_size > pair_cap)
    throw std::length_error("pt_moment3_by_enumeration: cap exceeded");

  auto elements = red.group_elements();
  std::vector<WeylOp> transposed;
  transposed.reserve(elements.size());
  for (const auto& s : elements)
    transposed.push_back(partial_transpose(s, b_pos));
  // Vector -> element index, to force the third factor of each triple.
  std::unordered_map<std::string, size_t> by_vector;
  by_vector.reserve(elements.size());
  auto key_of = [&](const WeylOp& w) {
    std::string key;
    key.reserve(2 * w.n());
    for (uint32_t v : w.x) key.push_back(char('0' + v));
    for (uint32_t v : w.z) key.push_back(char('0' + v));
    return key;
  };
  for (size_t i = 0; i < elements.size(); ++i)
    by_vector.emplace(key_of(elements[i]), i);

  uint32_t mod = phase_modulus(p);
  std::vector<uint64_t> phase_count(mod, 0);
  std::vector<uint32_t> needed_x(red.n()), needed_z(red.n());
  for (size_t i = 0; i < elements.size(); ++i) {
    for (size_t j = 0; j < elements.size(); ++j) {
      // tr(s_i' s_j' s') = 0 unless the symplectic vectors cancel; the
      // partial transpose acts linearly, so the third (untransposed)
      // element is forced.
      const WeylOp& si = elements[i];
      const WeylOp& sj = elements[j];
      for (size_t qd = 0; qd < red.n(); ++qd) {
        needed_x[qd] = (2 * p - si.x[qd] - sj.x[qd]) % p;
        needed_z[qd] = (2 * p - si.z[qd] - sj.z[qd]) % p;
      }
      std::string key;
      key.reserve(2 * red.n());
      for (uint32_t v : needed_x) key.push_back(char('0' + v));
      for (uint32_t v : needed_z) key.push_back(char('0' + v));
      auto it = by_vector.find(key);
      if (it == by_vector.end()) continue;
      WeylOp prod = multiply(multiply(transposed[i], transposed[j]),
                             transposed[it->second]);
      if (!prod.is_identity_vector())
        throw std::logic_error("pt_moment3: broken triple cancellation");
      ++phase_count[prod.phase];
    }
  }
  // Exact evaluation of sum_j count_j * phase_unit^j as an integer.
  int64_t total;
  if (p == 2) {
    if (phase_count[1] != phase_count[3])
      throw std::logic_error("pt_moment3: imaginary residue");
    total = int64_t(phase_count[0]) - int64_t(phase_count[2]);
  } else {
    for (uint32_t j = 2; j < p; ++j)
      if (phase_count[j] != phase_count[1])
        throw std::logic_error("pt_moment3: irrational residue");
    total = int64_t(phase_count[0]) - int64_t(phase_count[1]);
  }
  if (total <= 0) throw std::logic_error("pt_moment3: nonpositive trace");
  // tr((rho^{T_B})^3) = p^{-2 n_AB} * total; total must be a power of p.
  int64_t e = checked_power_exponent(uint64_t(total), p);
  return 2 * int64_t(red.n()) - e;
}

GhzContent ghz_content(const Tableau& t, std::span<const size_t> a,
                       std::span<const size_t> b, std::span<const size_t> c) {
  if (!t.pure())
    throw std::invalid_argument("ghz_content: tableau must be pure");
  if (a.size() + b.size() + c.size() != t.n())
    throw std::invalid_argument("ghz_content: A,B,C must partition qudits");
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);
  int64_t sa = entropy(t, a), sb = entropy(t, b), sc = entropy(t, c);
  int64_t m = pt_moment3(t, a, b);
  GhzContent out;
  out.g = sa + sb + sc - m;
  int64_t iab = sa + sb - sc;  // S(AB) = S(C) for pure states
  int64_t iac = sa + sc - sb;
  int64_t ibc = sb + sc - sa;
  auto halve = [](int64_t v, const char* which) {
    if (v < 0 || v % 2 != 0)
      throw std::logic_error(std::string("ghz_content: invalid count for ") +
                             which);
    return v / 2;
  };
  if (out.g < 0) throw std::logic_error("ghz_content: negative g");
  out.c = halve(iab - out.g, "c");
  out.b = halve(iac - out.g, "b");
  out.a = halve(ibc - out.g, "a");
  // Normal-form accounting must close exactly.
  if (sa + sb + sc != 2 * (out.a + out.b + out.c) + 3 * out.g)
    throw std::logic_error("ghz_content: entropy accounting mismatch");
  return out;
}

FourpartiteReport fourpartite_report(
    const Tableau& t, const std::array<std::vector<size_t>, 4>& parts) {
  size_t total = 0;
  for (const auto& p : parts) total += p.size();
  if (total != t.n())
    throw std::invalid_argument("fourpartite_report: not a partition");
  FourpartiteReport rep;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::vector<size_t> rest;
      for (int k = 0; k < 4; ++k)
        if (k != i && k != j)
          rest.insert(rest.end(), parts[k].begin(), parts[k].end());
      GhzContent gc = ghz_content(t, parts[i], parts[j], rest);
      rep.t[i][j] = rep.t[j][i] = gc.c;
      rep.g_max = std::max(rep.g_max, gc.g);
    }
  }
  rep.i3 = tripartite_information(t, parts[0], parts[1], parts[2]);
  for (int i = 0; i < 4; ++i) {
    int64_t s = entropy(t, parts[i]);
    for (int j = 0; j < 4; ++j)
      if (j != i) s -= rep.t[i][j];
    rep.residual_entropies[i] = s;
  }
  return rep;
}

}  // namespace stabnet

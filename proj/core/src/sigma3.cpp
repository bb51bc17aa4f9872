#include "stabnet/sigma3.hpp"

#include <stdexcept>

namespace stabnet {

bool SubspaceT::contains(std::span<const uint32_t> v) const {
  return in_row_span(basis, v);
}

namespace {

FpMatrix canonical(const FpMatrix& basis) { return rref(basis).m; }

SubspaceT make_subspace(uint32_t p, const std::vector<std::vector<int64_t>>& rows,
                        bool odd, std::string label) {
  FpMatrix b = canonical(FpMatrix::from_rows(p, rows));
  if (!is_lagrangian_stochastic(b))
    throw std::logic_error("sigma3: constructed subspace fails validation: " +
                           label);
  return SubspaceT{std::move(b), odd, std::move(label)};
}

// T_pi = {(pi y, y)}: basis rows (e_{pi(j)} | e_j).
SubspaceT permutation_subspace(uint32_t p, const std::array<int, 3>& pi,
                               bool odd, std::string label) {
  std::vector<std::vector<int64_t>> rows(3, std::vector<int64_t>(6, 0));
  for (int j = 0; j < 3; ++j) {
    rows[j][pi[j]] = 1;
    rows[j][3 + j] = 1;
  }
  return make_subspace(p, rows, odd, std::move(label));
}

}  // namespace

bool is_lagrangian_stochastic(const FpMatrix& basis) {
  if (basis.cols() != 6 || basis.rows() != 3) return false;
  if (rank(basis) != 3) return false;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i; j < 3; ++j)
      if (beta_form(basis.row(i), basis.row(j), basis.p()) != 0) return false;
  std::vector<uint32_t> ones(6, 1);
  return in_row_span(basis, ones);
}

std::vector<SubspaceT> build_sigma3(const PrimeField& f) {
  uint32_t p = f.p;
  std::vector<SubspaceT> out;
  if (p == 2) {
    // Sigma_3(2) is the permutation group S_3.
    out.push_back(permutation_subspace(p, {0, 1, 2}, false, "id"));
    out.push_back(permutation_subspace(p, {1, 2, 0}, false, "zeta"));
    out.push_back(permutation_subspace(p, {2, 0, 1}, false, "zeta_inv"));
    out.push_back(permutation_subspace(p, {1, 0, 2}, true, "swap01"));
    out.push_back(permutation_subspace(p, {2, 1, 0}, true, "swap02"));
    out.push_back(permutation_subspace(p, {0, 2, 1}, true, "swap12"));
  } else {
    auto t_even = [&](int64_t m) {
      return make_subspace(p,
                           {{1, 1, 1, 1, 1, 1},
                            {-1, m, 1, 1, m, -1},
                            {m, 1, -1, m, -1, 1}},
                           false, "even,m=" + std::to_string(m));
    };
    auto t_odd = [&](int64_t m) {
      return make_subspace(p,
                           {{1, 1, 1, 1, 1, 1},
                            {1, m, 0, 1, m, 0},
                            {-m, 1, m - 1, m, -1, 1 - m}},
                           true, "odd,m=" + std::to_string(m));
    };
    out.push_back(make_subspace(
        p, {{1, 1, 1, 1, 1, 1}, {1, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 1, 0}},
        false, "even,*"));
    out.push_back(t_even(1));       // zeta
    out.push_back(t_even(p - 1));   // zeta^{-1}
    for (uint32_t m = 0; m < p; ++m) {
      if (m == 1 || m == p - 1) continue;
      out.push_back(t_even(m));
    }
    out.push_back(make_subspace(
        p, {{1, 1, 1, 1, 1, 1}, {-1, 0, 1, 1, 0, -1}, {0, 1, 0, 0, 1, 0}},
        true, "odd,*"));
    for (uint32_t m = 0; m < p; ++m) out.push_back(t_odd(m));
  }
  if (out.size() != 2 * size_t(p) + 2)
    throw std::logic_error("sigma3: expected 2p+2 subspaces");
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i].basis == out[j].basis)
        throw std::logic_error("sigma3: duplicate subspaces " + out[i].label +
                               " and " + out[j].label);
  return out;
}

int distance(const SubspaceT& t1, const SubspaceT& t2) {
  if (t1.p() != t2.p()) throw std::invalid_argument("distance: p mismatch");
  FpMatrix stacked(t1.p(), 0, 6);
  for (size_t i = 0; i < 3; ++i) stacked.append_row(t1.basis.row(i));
  for (size_t i = 0; i < 3; ++i) stacked.append_row(t2.basis.row(i));
  // dim(T1 cap T2) = 3 + 3 - dim(T1 + T2)
  int dim_cap = 6 - int(rank(stacked));
  return 3 - dim_cap;
}

bool is_stochastic_orthogonal(const FpMatrix& o) {
  if (o.rows() != 6 || o.cols() != 6) return false;
  uint32_t p = o.p();
  PrimeField f(p);
  // O 1 = 1
  for (size_t r = 0; r < 6; ++r) {
    uint32_t sum = 0;
    for (size_t c = 0; c < 6; ++c) sum = f.add(sum, o(r, c));
    if (sum != 1) return false;
  }
  // beta(O e_i, O e_j) = beta(e_i, e_j) for all basis pairs
  FpMatrix ot = o.transposed();  // row r = O e_r
  for (size_t i = 0; i < 6; ++i) {
    for (size_t j = 0; j < 6; ++j) {
      std::vector<uint32_t> ei(6, 0), ej(6, 0);
      ei[i] = 1;
      ej[j] = 1;
      if (beta_form(ot.row(i), ot.row(j), p) != beta_form(ei, ej, p))
        return false;
    }
  }
  return true;
}

std::vector<FpMatrix> stochastic_orthogonal_generators(const PrimeField& f) {
  uint32_t p = f.p;
  std::vector<FpMatrix> out;
  auto block_perm = [&](const std::array<int, 3>& pi,
                        const std::array<int, 3>& tau) {
    FpMatrix o(p, 6, 6);
    for (int j = 0; j < 3; ++j) {
      o(pi[j], j) = 1;
      o(3 + tau[j], 3 + j) = 1;
    }
    return o;
  };
  out.push_back(block_perm({1, 0, 2}, {0, 1, 2}));
  out.push_back(block_perm({1, 2, 0}, {0, 1, 2}));
  out.push_back(block_perm({0, 1, 2}, {1, 0, 2}));
  out.push_back(block_perm({0, 1, 2}, {1, 2, 0}));
  if (p != 2) {
    PrimeField field(p);
    uint32_t inv2 = field.inv(2);
    // Householder reflection H_v = I - 2 (v.v)^{-1} v v^T with v = (1,-1,0),
    // applied to either half.
    auto householder_block = [&](bool first_half) {
      std::array<int64_t, 3> v{1, -1, 0};
      FpMatrix o = FpMatrix::identity(p, 6);
      uint32_t vv = 2 % p;
      uint32_t coef = field.mul(2, field.inv(vv));
      size_t off = first_half ? 0 : 3;
      for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
          uint32_t vi = field.reduce(v[i]), vj = field.reduce(v[j]);
          o(off + i, off + j) =
              field.sub(o(off + i, off + j), field.mul(coef, field.mul(vi, vj)));
        }
      return o;
    };
    out.push_back(householder_block(true));
    out.push_back(householder_block(false));
    // Unipotent shears: in coordinates u = x+y, w = x-y the form becomes the
    // hyperbolic pairing, preserved by (u,w) -> (u, w + K u) and its dual,
    // with K antisymmetric and K 1 = 0.
    int64_t k[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    auto shear = [&](bool direct) {
      FpMatrix o = FpMatrix::identity(p, 6);
      for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
          uint32_t hk = field.mul(inv2, field.reduce(k[i][j]));
          if (direct) {
            // x' = x + (1/2)K(x+y), y' = y - (1/2)K(x+y)
            o(i, j) = field.add(o(i, j), hk);
            o(i, 3 + j) = field.add(o(i, 3 + j), hk);
            o(3 + i, j) = field.sub(o(3 + i, j), hk);
            o(3 + i, 3 + j) = field.sub(o(3 + i, 3 + j), hk);
          } else {
            // x' = x + (1/2)K(x-y), y' = y + (1/2)K(x-y)
            o(i, j) = field.add(o(i, j), hk);
            o(i, 3 + j) = field.sub(o(i, 3 + j), hk);
            o(3 + i, j) = field.add(o(3 + i, j), hk);
            o(3 + i, 3 + j) = field.sub(o(3 + i, 3 + j), hk);
          }
        }
      return o;
    };
    out.push_back(shear(true));
    out.push_back(shear(false));
  }
  for (const auto& o : out)
    if (!is_stochastic_orthogonal(o))
      throw std::logic_error("stochastic_orthogonal_generators: invalid map");
  return out;
}

FpMatrix apply_to_subspace(const FpMatrix& o, const FpMatrix& basis) {
  if (o.cols() != basis.cols())
    throw std::invalid_argument("apply_to_subspace: shape mismatch");
  // Rows are vectors; v -> O v means basis -> basis * O^T.
  PrimeField f(o.p());
  FpMatrix image(o.p(), basis.rows(), basis.cols());
  for (size_t r = 0; r < basis.rows(); ++r)
    for (size_t i = 0; i < o.rows(); ++i) {
      uint32_t acc = 0;
      for (size_t j = 0; j < o.cols(); ++j)
        acc = f.add(acc, f.mul(o(i, j), basis(r, j)));
      image(r, i) = acc;
    }
  return rref(image).m;
}

}  // namespace stabnet

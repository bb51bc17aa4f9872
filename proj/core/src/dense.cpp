#include "stabnet/dense.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "stabnet/graph.hpp"
#include "stabnet/tableau.hpp"

namespace stabnet {

namespace {

using cplx = std::complex<double>;

cplx root_of_unity(uint32_t order, uint64_t exponent) {
  double angle = 2.0 * std::numbers::pi * double(exponent % order) / order;
  return {std::cos(angle), std::sin(angle)};
}

// Digits of idx in base p, qudit 0 most significant.
void to_digits(size_t idx, uint32_t p, size_t n, std::vector<uint32_t>& out) {
  out.resize(n);
  for (size_t i = n; i-- > 0;) {
    out[i] = static_cast<uint32_t>(idx % p);
    idx /= p;
  }
}

size_t from_digits(std::span<const uint32_t> digits, uint32_t p) {
  size_t idx = 0;
  for (uint32_t d : digits) idx = idx * p + d;
  return idx;
}

}  // namespace

CMat weyl_matrix(const WeylOp& w) {
  size_t dim = pow_sz(w.p, w.n());
  CMat m = CMat::Zero(dim, dim);
  // Scalar prefactor making the matrix equal phase_unit^phase * W(x,z).
  uint64_t xz = 0;
  for (size_t i = 0; i < w.n(); ++i) xz += uint64_t(w.x[i]) * w.z[i];
  cplx scalar;
  if (w.p == 2) {
    scalar = root_of_unity(4, w.phase + xz);
  } else {
    PrimeField f(w.p);
    uint32_t half = f.inv(2);
    uint64_t corr = uint64_t(half) * (xz % w.p) % w.p;
    scalar = root_of_unity(w.p, (w.phase + w.p - corr % w.p) % w.p);
  }
  std::vector<uint32_t> digits, shifted(w.n());
  for (size_t col = 0; col < dim; ++col) {
    to_digits(col, w.p, w.n(), digits);
    uint64_t zdot = 0;
    for (size_t i = 0; i < w.n(); ++i) {
      zdot += uint64_t(w.z[i]) * digits[i];
      shifted[i] = (digits[i] + w.x[i]) % w.p;
    }
    size_t row = from_digits(shifted, w.p);
    m(row, col) = scalar * root_of_unity(w.p, zdot);
  }
  return m;
}

CMat tableau_to_dense_operator(const Tableau& t) {
  size_t dim = pow_sz(t.p(), t.n());
  CMat acc = CMat::Identity(dim, dim);
  for (size_t i = 0; i < t.k(); ++i) {
    CMat g = weyl_matrix(t.generator(i));
    CMat proj = CMat::Zero(dim, dim);
    CMat pw = CMat::Identity(dim, dim);
    for (uint32_t j = 0; j < t.p(); ++j) {
      proj += pw;
      pw = g * pw;
    }
    proj /= double(t.p());
    acc = proj * acc;
  }
  double scale = std::pow(double(t.p()),
                          double(t.log_trace()) - double(t.n()) + double(t.k()));
  return scale * acc;
}

DenseState tableau_to_dense(const Tableau& t) {
  if (!t.pure())
    throw std::invalid_argument("tableau_to_dense: tableau is not pure");
  size_t dim = pow_sz(t.p(), t.n());
  CMat proj = CMat::Identity(dim, dim);
  for (size_t i = 0; i < t.k(); ++i) {
    CMat g = weyl_matrix(t.generator(i));
    CMat sum = CMat::Zero(dim, dim);
    CMat pw = CMat::Identity(dim, dim);
    for (uint32_t j = 0; j < t.p(); ++j) {
      sum += pw;
      pw = g * pw;
    }
    proj = (sum / double(t.p())) * proj;
  }
  // Rank-one projector: any nonzero column spans the state.
  size_t best = 0;
  double best_norm = 0;
  for (size_t c = 0; c < dim; ++c) {
    double nrm = proj.col(c).norm();
    if (nrm > best_norm) {
      best_norm = nrm;
      best = c;
    }
  }
  if (best_norm < 1e-9)
    throw std::logic_error("tableau_to_dense: inconsistent tableau");
  CVec v = proj.col(best) / best_norm;
  // Fix global phase: first amplitude of modulus > tol becomes real positive.
  for (size_t i = 0; i < dim; ++i) {
    if (std::abs(v(i)) > 1e-9) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return {t.p(), t.n(), v};
}

CMat partial_trace(const CMat& rho, uint32_t p, size_t n,
                   std::span<const size_t> keep) {
  size_t nk = keep.size();
  size_t dk = pow_sz(p, nk);
  std::vector<bool> kept(n, false);
  for (size_t q : keep) {
    if (q >= n) throw std::out_of_range("partial_trace: bad index");
    kept[q] = true;
  }
  std::vector<size_t> traced;
  for (size_t q = 0; q < n; ++q)
    if (!kept[q]) traced.push_back(q);
  size_t dt = pow_sz(p, traced.size());
  CMat out = CMat::Zero(dk, dk);
  std::vector<uint32_t> kd(nk), kd2(nk), td(traced.size()), full(n);
  for (size_t r = 0; r < dk; ++r) {
    to_digits(r, p, nk, kd);
    for (size_t c = 0; c < dk; ++c) {
      to_digits(c, p, nk, kd2);
      cplx sum = 0;
      for (size_t tidx = 0; tidx < dt; ++tidx) {
        to_digits(tidx, p, traced.size(), td);
        for (size_t i = 0; i < nk; ++i) full[keep[i]] = kd[i];
        for (size_t i = 0; i < traced.size(); ++i) full[traced[i]] = td[i];
        size_t row = from_digits(full, p);
        for (size_t i = 0; i < nk; ++i) full[keep[i]] = kd2[i];
        size_t col = from_digits(full, p);
        sum += rho(row, col);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

double dense_entropy(const CMat& rho, uint32_t p, size_t n,
                     std::span<const size_t> subset) {
  CMat red = partial_trace(rho, p, n, subset);
  Eigen::SelfAdjointEigenSolver<CMat> es(red);
  double s = 0;
  for (double lam : es.eigenvalues()) {
    if (lam < 1e-12) continue;
    s -= lam * std::log(lam);
  }
  return s / std::log(double(p));
}

CMat dense_partial_transpose(const CMat& rho, uint32_t p, size_t n,
                             std::span<const size_t> subset) {
  size_t dim = pow_sz(p, n);
  if (rho.rows() != Eigen::Index(dim))
    throw std::invalid_argument("dense_partial_transpose: shape mismatch");
  CMat out(dim, dim);
  std::vector<uint32_t> rd(n), cd(n);
  for (size_t r = 0; r < dim; ++r) {
    to_digits(r, p, n, rd);
    for (size_t c = 0; c < dim; ++c) {
      to_digits(c, p, n, cd);
      auto rd2 = rd;
      auto cd2 = cd;
      for (size_t q : subset) std::swap(rd2[q], cd2[q]);
      out(from_digits(rd2, p), from_digits(cd2, p)) = rho(r, c);
    }
  }
  return out;
}

double dense_pt3(const CMat& rho_ab, uint32_t p, size_t n_ab,
                 std::span<const size_t> b_positions) {
  CMat pt = dense_partial_transpose(rho_ab, p, n_ab, b_positions);
  return (pt * pt * pt).trace().real();
}

CVec dense_contract(const NetworkGraph& g,
                    const std::vector<CVec>& bulk_tensors) {
  uint32_t p = g.field.p;
  size_t per_edge = 2 * g.bond_exponent;
  size_t n_tot = per_edge * g.edges.size();
  size_t dim = pow_sz(p, n_tot);
  // Product of edge Bell pairs: amplitude is nonzero iff the two endpoint
  // blocks of every edge carry equal digit strings.
  CVec psi = CVec::Zero(dim);
  double amp = std::pow(double(p), -0.5 * double(g.bond_exponent) *
                                       double(g.edges.size()));
  std::vector<uint32_t> digits;
  for (size_t idx = 0; idx < dim; ++idx) {
    to_digits(idx, p, n_tot, digits);
    bool match = true;
    for (size_t e = 0; e < g.edges.size() && match; ++e) {
      size_t base = e * per_edge;
      for (size_t j = 0; j < g.bond_exponent; ++j) {
        if (digits[base + j] != digits[base + g.bond_exponent + j]) {
          match = false;
          break;
        }
      }
    }
    if (match) psi(idx) = amp;
  }
  // Contract each bulk vertex: psi'[rest] = sum_v conj(V[v]) psi[v, rest].
  auto bulk = g.bulk_ids();
  if (bulk.size() != bulk_tensors.size())
    throw std::invalid_argument("dense_contract: tensor count mismatch");
  std::vector<size_t> qudit_of_endpoint(n_tot);
  // Current global qudit ordering as a list of original indices.
  std::vector<size_t> alive(n_tot);
  for (size_t i = 0; i < n_tot; ++i) alive[i] = i;
  size_t cur_n = n_tot;
  for (size_t bi = 0; bi < bulk.size(); ++bi) {
    size_t v = bulk[bi];
    // Original qudit indices owned by vertex v, in (edge, side) order.
    std::vector<size_t> owned;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].first == v)
        for (size_t j = 0; j < g.bond_exponent; ++j)
          owned.push_back(e * per_edge + j);
      if (g.edges[e].second == v)
        for (size_t j = 0; j < g.bond_exponent; ++j)
          owned.push_back(e * per_edge + g.bond_exponent + j);
    }
    // Positions of those qudits in the current ordering.
    std::vector<size_t> pos;
    for (size_t q : owned) {
      auto it = std::find(alive.begin(), alive.end(), q);
      pos.push_back(size_t(it - alive.begin()));
    }
    const CVec& bra = bulk_tensors[bi];
    size_t nv = owned.size();
    if (bra.size() != Eigen::Index(pow_sz(p, nv)))
      throw std::invalid_argument("dense_contract: tensor dim mismatch");
    size_t rest_n = cur_n - nv;
    CVec out = CVec::Zero(pow_sz(p, rest_n));
    std::vector<bool> is_owned(cur_n, false);
    for (size_t q : pos) is_owned[q] = true;
    std::vector<uint32_t> dall, dv(nv), drest(rest_n);
    for (size_t idx = 0; idx < pow_sz(p, cur_n); ++idx) {
      to_digits(idx, p, cur_n, dall);
      size_t vi = 0, ri = 0;
      for (size_t q = 0; q < cur_n; ++q) {
        if (is_owned[q]) {
          // digits must be read in the vertex's own qudit order
        } else {
          drest[ri++] = dall[q];
        }
      }
      for (size_t j = 0; j < nv; ++j) dv[j] = dall[pos[j]];
      vi = from_digits(dv, p);
      out(from_digits(drest, p)) += std::conj(bra(vi)) * psi(idx);
    }
    psi = std::move(out);
    std::vector<size_t> next_alive;
    for (size_t q = 0; q < cur_n; ++q)
      if (!is_owned[q]) next_alive.push_back(alive[q]);
    alive = std::move(next_alive);
    cur_n = rest_n;
  }
  return psi;
}

}  // namespace stabnet

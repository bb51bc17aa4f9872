#include "stabnet/moments.hpp"

#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "stabnet/rng.hpp"
#include "stabnet/tableau.hpp"

namespace stabnet {

namespace {

using cplx = std::complex<double>;

cplx unit_phase(double turns) {
  double ang = 2.0 * std::numbers::pi * turns;
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace

RPattern r_pattern(const SubspaceT& t, size_t n) {
  uint32_t p = t.p();
  // Membership table of T over packed (x,y) codes.
  size_t p3 = pow_sz(p, 3), p6 = p3 * p3;
  std::vector<uint8_t> member(p6, 0);
  {
    // T has p^3 elements: all row combinations of the basis.
    std::vector<uint32_t> coeff(3);
    for (size_t code = 0; code < p3; ++code) {
      size_t c = code;
      for (size_t i = 0; i < 3; ++i) {
        coeff[i] = uint32_t(c % p);
        c /= p;
      }
      auto vec = row_times_matrix(coeff, t.basis);
      size_t key = 0;
      for (uint32_t d : vec) key = key * p + d;
      member[key] = 1;
    }
  }
  auto pair_in_t = [&](uint32_t x0, uint32_t x1, uint32_t x2, uint32_t y0,
                       uint32_t y1, uint32_t y2) {
    size_t key = ((((size_t(x0) * p + x1) * p + x2) * p + y0) * p + y1) * p + y2;
    return member[key] != 0;
  };

  size_t dim = pow_sz(p, 3 * n);
  RPattern out;
  out.dim = dim;
  // Column w = (w1,w2,w3); rows reached are products of per-qudit choices.
  // Enumerate per-qudit admissible (x triple) lists for each (y triple).
  size_t p3n = dim;
  std::vector<uint32_t> w(3 * n), v(3 * n);
  for (size_t col = 0; col < p3n; ++col) {
    size_t c = col;
    for (size_t i = 3 * n; i-- > 0;) {
      w[i] = uint32_t(c % p);
      c /= p;
    }
    // Per qudit i the y-triple is (w[i], w[n+i], w[2n+i]); collect the
    // admissible x-triples and walk their product.
    std::vector<std::vector<std::array<uint32_t, 3>>> options(n);
    bool feasible = true;
    for (size_t i = 0; i < n && feasible; ++i) {
      for (uint32_t x0 = 0; x0 < p; ++x0)
        for (uint32_t x1 = 0; x1 < p; ++x1)
          for (uint32_t x2 = 0; x2 < p; ++x2)
            if (pair_in_t(x0, x1, x2, w[i], w[n + i], w[2 * n + i]))
              options[i].push_back({x0, x1, x2});
      feasible = !options[i].empty();
    }
    if (!feasible) continue;
    std::vector<size_t> pick(n, 0);
    while (true) {
      for (size_t i = 0; i < n; ++i) {
        v[i] = options[i][pick[i]][0];
        v[n + i] = options[i][pick[i]][1];
        v[2 * n + i] = options[i][pick[i]][2];
      }
      size_t row = 0;
      for (uint32_t d : v) row = row * p + d;
      out.ones.emplace_back(row, col);
      size_t d = 0;
      while (d < n && ++pick[d] == options[d].size()) pick[d++] = 0;
      if (d == n) break;
    }
  }
  return out;
}

Eigen::MatrixXd r_matrix(const SubspaceT& t, size_t n) {
  RPattern pat = r_pattern(t, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(pat.dim, pat.dim);
  for (auto& [r, c] : pat.ones) m(r, c) = 1.0;
  return m;
}

double commutator_max_abs(const RPattern& r, const CMat& u) {
  // (R U)(row,:) accumulates u(col,:); (U R)(:,col) accumulates u(:,row).
  CMat ru = CMat::Zero(r.dim, r.dim), ur = CMat::Zero(r.dim, r.dim);
  for (auto& [row, col] : r.ones) {
    ru.row(row) += u.row(col);
    ur.col(col) += u.col(row);
  }
  return (ru - ur).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd third_moment_formula(size_t n, const PrimeField& f) {
  if (f.p != 2 && n < 2)
    throw std::invalid_argument(
        "third_moment_formula: the formula requires n >= 2 for odd p "
        "(single-qudit commutant is larger); refusing to extrapolate");
  auto sigma = build_sigma3(f);
  size_t dim = pow_sz(f.p, 3 * n);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& t : sigma) {
    RPattern pat = r_pattern(t, n);
    for (auto& [r, c] : pat.ones) acc(r, c) += 1.0;
  }
  double d = std::pow(double(f.p), double(n));
  acc /= d * (d + 1) * (d + double(f.p));
  return acc;
}

namespace {

Eigen::MatrixXcd empirical_moment(size_t n, const PrimeField& f, int k,
                                  const std::vector<Tableau>& states) {
  size_t d1 = pow_sz(f.p, n);
  size_t dim = 1;
  for (int i = 0; i < k; ++i) dim *= d1;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  CVec big(dim);
  for (const auto& t : states) {
    DenseState st = tableau_to_dense(t);
    if (k == 2) {
      for (size_t i = 0; i < d1; ++i)
        for (size_t j = 0; j < d1; ++j)
          big(i * d1 + j) = st.amplitudes(i) * st.amplitudes(j);
    } else {
      for (size_t i = 0; i < d1; ++i)
        for (size_t j = 0; j < d1; ++j)
          for (size_t l = 0; l < d1; ++l)
            big((i * d1 + j) * d1 + l) =
                st.amplitudes(i) * st.amplitudes(j) * st.amplitudes(l);
    }
    acc.noalias() += big * big.adjoint();
  }
  return acc / double(states.size());
}

std::vector<Tableau> mc_states(size_t n, const PrimeField& f, int64_t trials,
                               uint64_t seed) {
  std::vector<Tableau> states;
  states.reserve(trials);
  for (int64_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(trial_seed(seed, uint64_t(i)));
    states.push_back(sample_uniform(n, f.p, rng));
  }
  return states;
}

}  // namespace

Eigen::MatrixXcd empirical_third_moment_exhaustive(size_t n,
                                                   const PrimeField& f) {
  return empirical_moment(n, f, 3, enumerate_all(n, f.p));
}

Eigen::MatrixXcd empirical_third_moment_mc(size_t n, const PrimeField& f,
                                           int64_t trials, uint64_t seed) {
  return empirical_moment(n, f, 3, mc_states(n, f, trials, seed));
}

Eigen::MatrixXcd empirical_second_moment_exhaustive(size_t n,
                                                    const PrimeField& f) {
  return empirical_moment(n, f, 2, enumerate_all(n, f.p));
}

Eigen::MatrixXcd empirical_second_moment_mc(size_t n, const PrimeField& f,
                                            int64_t trials, uint64_t seed) {
  return empirical_moment(n, f, 2, mc_states(n, f, trials, seed));
}

Eigen::MatrixXd second_moment_formula(size_t n, const PrimeField& f) {
  size_t d = pow_sz(f.p, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d * d, d * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) m(i * d + j, j * d + i) += 1.0;
  return m / (double(d) * double(d + 1));
}

namespace {

CMat fourier_gate(uint32_t p) {
  CMat f(p, p);
  for (uint32_t i = 0; i < p; ++i)
    for (uint32_t j = 0; j < p; ++j)
      f(i, j) = unit_phase(double(i) * j / p) / std::sqrt(double(p));
  return f;
}

CMat phase_gate(uint32_t p) {
  CMat s = CMat::Zero(p, p);
  if (p == 2) {
    s(0, 0) = 1;
    s(1, 1) = cplx(0, 1);
  } else {
    PrimeField f(p);
    uint32_t inv2 = f.inv(2);
    for (uint32_t j = 0; j < p; ++j) {
      uint32_t e = f.mul(inv2, f.mul(j, (j + 1) % p));
      s(j, j) = unit_phase(double(e) / p);
    }
  }
  return s;
}

CMat mult_gate(uint32_t p, uint32_t a) {
  CMat m = CMat::Zero(p, p);
  for (uint32_t j = 0; j < p; ++j) m((a * j) % p, j) = 1;
  return m;
}

CMat embed_single(size_t n, uint32_t p, size_t qudit, const CMat& gate) {
  CMat acc = CMat::Identity(1, 1);
  for (size_t i = 0; i < n; ++i) {
    const CMat& factor =
        i == qudit ? gate : CMat(CMat::Identity(p, p));
    acc = Eigen::kroneckerProduct(acc, factor).eval();
  }
  return acc;
}

CMat cadd_gate(size_t n, uint32_t p, size_t control, size_t target) {
  size_t dim = pow_sz(p, n);
  CMat m = CMat::Zero(dim, dim);
  std::vector<uint32_t> digits(n);
  for (size_t col = 0; col < dim; ++col) {
    size_t c = col;
    for (size_t i = n; i-- > 0;) {
      digits[i] = uint32_t(c % p);
      c /= p;
    }
    digits[target] = (digits[target] + digits[control]) % p;
    size_t row = 0;
    for (uint32_t d : digits) row = row * p + d;
    m(row, col) = 1;
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd random_clifford_dense(size_t n, const PrimeField& f,
                                       size_t word_length,
                                       std::mt19937_64& rng) {
  uint32_t p = f.p;
  size_t dim = pow_sz(p, n);
  CMat u = CMat::Identity(dim, dim);
  std::uniform_int_distribution<int> gate_pick(0, n >= 2 ? 5 : 4);
  std::uniform_int_distribution<size_t> qudit_pick(0, n - 1);
  for (size_t step = 0; step < word_length; ++step) {
    int gate = gate_pick(rng);
    size_t q = qudit_pick(rng);
    CMat g;
    switch (gate) {
      case 0:
        g = embed_single(n, p, q, fourier_gate(p));
        break;
      case 1:
        g = embed_single(n, p, q, phase_gate(p));
        break;
      case 2: {
        uint32_t a =
            p == 2 ? 1
                   : std::uniform_int_distribution<uint32_t>(1, p - 1)(rng);
        g = embed_single(n, p, q, mult_gate(p, a));
        break;
      }
      case 3: {
        WeylOp x = WeylOp::identity(p, 1);
        x.x[0] = 1;
        g = embed_single(n, p, q, weyl_matrix(x));
        break;
      }
      case 4: {
        WeylOp z = WeylOp::identity(p, 1);
        z.z[0] = 1;
        g = embed_single(n, p, q, weyl_matrix(z));
        break;
      }
      default: {
        size_t t = qudit_pick(rng);
        while (t == q) t = qudit_pick(rng);
        g = cadd_gate(n, p, q, t);
        break;
      }
    }
    u = g * u;
  }
  return u;
}

Eigen::MatrixXcd non_clifford_gate(size_t n, const PrimeField& f) {
  uint32_t p = f.p;
  CMat t = CMat::Zero(p, p);
  for (uint32_t j = 0; j < p; ++j) {
    // Cubic phases over p-th roots are Clifford-reachable, so lift to p^2
    // (odd p) or 8 (p = 2): the qudit analogue of the T gate.
    uint32_t order = p == 2 ? 8 : p * p;
    uint64_t e = (uint64_t(j) * j * j) % order;
    t(j, j) = unit_phase(double(e) / order);
  }
  return embed_single(n, p, 0, t);
}

namespace {

CMat triple_power(const CMat& u) {
  return Eigen::kroneckerProduct(u, Eigen::kroneckerProduct(u, u).eval())
      .eval();
}

}  // namespace

MomentReport commutant_check(size_t n, const PrimeField& f, int64_t samples,
                             uint64_t seed, size_t word_length) {
  auto sigma = build_sigma3(f);
  std::vector<RPattern> patterns;
  for (const auto& t : sigma) patterns.push_back(r_pattern(t, n));
  MomentReport rep;
  rep.check = "commutant";
  rep.p = f.p;
  rep.n = int(n);
  rep.tolerance = 1e-9;
  for (int64_t s = 0; s < samples; ++s) {
    std::mt19937_64 rng(trial_seed(seed, uint64_t(s)));
    CMat u = random_clifford_dense(n, f, word_length, rng);
    CMat u3 = triple_power(u);
    for (const auto& pat : patterns) {
      rep.max_abs_deviation =
          std::max(rep.max_abs_deviation, commutator_max_abs(pat, u3));
      ++rep.terms_checked;
    }
  }
  rep.pass = rep.max_abs_deviation <= rep.tolerance;
  return rep;
}

MomentReport negative_control_check(size_t n, const PrimeField& f) {
  auto sigma = build_sigma3(f);
  CMat u3 = triple_power(non_clifford_gate(n, f));
  MomentReport rep;
  rep.check = "negative-control";
  rep.p = f.p;
  rep.n = int(n);
  rep.tolerance = 1e-9;
  for (const auto& t : sigma) {
    rep.max_abs_deviation =
        std::max(rep.max_abs_deviation, commutator_max_abs(r_pattern(t, n), u3));
    ++rep.terms_checked;
  }
  // The control passes when the commutant property visibly fails.
  rep.pass = rep.max_abs_deviation > 1e-3;
  return rep;
}

IndependenceReport independence_check(size_t n, const PrimeField& f) {
  if (n < 2)
    throw std::invalid_argument("independence_check: requires n >= 2");
  auto sigma = build_sigma3(f);
  size_t q = sigma.size();
  IndependenceReport out;
  // Gram matrix under the trace inner product, via the sparse patterns.
  Eigen::MatrixXd gram(q, q);
  std::vector<RPattern> pats;
  for (const auto& t : sigma) pats.push_back(r_pattern(t, n));
  for (size_t i = 0; i < q; ++i) {
    // tr R(T_i) R(T_j)^dagger = #{(r,c) common to both patterns}.
    std::vector<std::pair<size_t, size_t>> a = pats[i].ones;
    std::sort(a.begin(), a.end());
    for (size_t j = 0; j < q; ++j) {
      int64_t common = 0;
      for (auto& rc : pats[j].ones)
        common += std::binary_search(a.begin(), a.end(), rc);
      gram(i, j) = double(common);
    }
  }
  out.gram_nonsingular =
      Eigen::FullPivLU<Eigen::MatrixXd>(gram).isInvertible();
  out.gram_matches_metric = true;
  for (size_t i = 0; i < q; ++i)
    for (size_t j = 0; j < q; ++j) {
      double expect = std::pow(
          double(f.p), 3.0 * double(n) - double(n) * distance(sigma[i], sigma[j]));
      if (std::abs(gram(i, j) - expect) > 1e-6) out.gram_matches_metric = false;
    }
  // Dual vectors: extend the all-ones vector to a basis (1, v1, v2) of T;
  // then [v1 in T'] [v2 in T'] = delta_{T,T'}.
  out.dual_vectors_identify = true;
  for (size_t i = 0; i < q; ++i) {
    std::vector<std::vector<uint32_t>> extra;
    std::vector<uint32_t> coeff(3);
    FpMatrix partial(f.p, 0, 6);
    std::vector<uint32_t> ones(6, 1);
    partial.append_row(ones);
    for (size_t code = 0; code < pow_sz(f.p, 3) && extra.size() < 2; ++code) {
      size_t c = code;
      for (size_t d = 0; d < 3; ++d) {
        coeff[d] = uint32_t(c % f.p);
        c /= f.p;
      }
      auto vec = row_times_matrix(coeff, sigma[i].basis);
      if (in_row_span(partial, vec)) continue;
      partial.append_row(vec);
      extra.push_back(vec);
    }
    for (size_t j = 0; j < q; ++j) {
      bool hit = sigma[j].contains(extra[0]) && sigma[j].contains(extra[1]);
      if (hit != (i == j)) out.dual_vectors_identify = false;
    }
  }
  out.pass = out.gram_nonsingular && out.gram_matches_metric &&
             out.dual_vectors_identify;
  return out;
}

namespace {

MomentReport compare_report(const char* name, const PrimeField& f, size_t n,
                            const Eigen::MatrixXcd& empirical,
                            const Eigen::MatrixXcd& formula, double tol) {
  MomentReport rep;
  rep.check = name;
  rep.p = f.p;
  rep.n = int(n);
  rep.tolerance = tol;
  rep.max_abs_deviation = (empirical - formula).cwiseAbs().maxCoeff();
  rep.terms_checked = int64_t(formula.size());
  rep.pass = rep.max_abs_deviation <= tol;
  return rep;
}

}  // namespace

MomentReport second_moment_check_exhaustive(size_t n, const PrimeField& f) {
  return compare_report("second-moment-exhaustive", f, n,
                        empirical_second_moment_exhaustive(n, f),
                        second_moment_formula(n, f), 1e-10);
}

MomentReport second_moment_check_mc(size_t n, const PrimeField& f,
                                    int64_t trials, uint64_t seed) {
  // Entrywise standard error of a +-1-bounded estimator is at most
  // 1/sqrt(trials); allow five of them.
  double tol = 5.0 / std::sqrt(double(trials));
  return compare_report("second-moment-mc", f, n,
                        empirical_second_moment_mc(n, f, trials, seed),
                        second_moment_formula(n, f), tol);
}

MomentReport third_moment_check_exhaustive(size_t n, const PrimeField& f) {
  return compare_report("third-moment-exhaustive", f, n,
                        empirical_third_moment_exhaustive(n, f),
                        third_moment_formula(n, f), 1e-10);
}

MomentReport third_moment_check_mc(size_t n, const PrimeField& f,
                                   int64_t trials, uint64_t seed) {
  double tol = 5.0 / std::sqrt(double(trials));
  return compare_report("third-moment-mc", f, n,
                        empirical_third_moment_mc(n, f, trials, seed),
                        third_moment_formula(n, f), tol);
}

}  // namespace stabnet

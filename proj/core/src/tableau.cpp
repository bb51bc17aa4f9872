#include "stabnet/tableau.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stabnet {

namespace {

// Working representation of a generator row as a signed Weyl operator.
WeylOp row_to_weyl(const FpMatrix& gens, uint32_t phase, size_t row,
                   uint32_t p) {
  size_t n = gens.cols() / 2;
  WeylOp w;
  w.p = p;
  w.phase = phase;
  w.x.assign(gens.row(row).begin(), gens.row(row).begin() + n);
  w.z.assign(gens.row(row).begin() + n, gens.row(row).end());
  return w;
}

std::vector<uint32_t> weyl_to_row(const WeylOp& w) {
  std::vector<uint32_t> v;
  v.reserve(2 * w.n());
  v.insert(v.end(), w.x.begin(), w.x.end());
  v.insert(v.end(), w.z.begin(), w.z.end());
  return v;
}

}  // namespace

Tableau::Tableau(uint32_t p, size_t n)
    : p_(p), n_(n), gens_(p, 0, 2 * n), log_trace_(static_cast<int64_t>(n)) {
  PrimeField check(p);  // validates primality
}

Tableau Tableau::from_generators(uint32_t p, size_t n,
                                 const std::vector<WeylOp>& gens,
                                 int64_t log_trace) {
  Tableau t(p, n);
  for (const auto& g : gens) {
    if (g.p != p || g.n() != n)
      throw std::invalid_argument("Tableau::from_generators: shape mismatch");
    auto row = weyl_to_row(g);
    t.gens_.append_row(row);
    t.phases_.push_back(g.phase);
  }
  t.log_trace_ = log_trace;
  t.validate();
  return t;
}

Tableau Tableau::zeros(uint32_t p, size_t n) {
  std::vector<WeylOp> gens;
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint32_t> x(n, 0), z(n, 0);
    z[i] = 1;
    gens.push_back(WeylOp::make(p, x, z));
  }
  return from_generators(p, n, gens, 0);
}

Tableau Tableau::bell_pair(uint32_t p) {
  std::vector<WeylOp> gens;
  gens.push_back(WeylOp::make(p, {1, 1}, {0, 0}));
  gens.push_back(WeylOp::make(p, {0, 0}, {1, p - 1}));
  return from_generators(p, 2, gens, 0);
}

Tableau Tableau::ghz(uint32_t p) {
  std::vector<WeylOp> gens;
  gens.push_back(WeylOp::make(p, {1, 1, 1}, {0, 0, 0}));
  gens.push_back(WeylOp::make(p, {0, 0, 0}, {1, p - 1, 0}));
  gens.push_back(WeylOp::make(p, {0, 0, 0}, {0, 1, p - 1}));
  return from_generators(p, 3, gens, 0);
}

WeylOp Tableau::generator(size_t i) const {
  return row_to_weyl(gens_, phases_[i], i, p_);
}

void Tableau::validate() const {
  if (gens_.rows() != phases_.size())
    throw std::logic_error("tableau: phase count mismatch");
  if (k() > n_) throw std::logic_error("tableau: more generators than qudits");
  for (size_t i = 0; i < k(); ++i) {
    for (uint32_t v : gens_.row(i))
      if (v >= p_) throw std::logic_error("tableau: entry out of range");
    if (p_ == 2 && phases_[i] % 2 != 0)
      throw std::logic_error("tableau: p=2 generator phase must be 0 or 2");
    if (phases_[i] >= phase_modulus(p_))
      throw std::logic_error("tableau: phase out of range");
    bool zero_row = true;
    for (uint32_t v : gens_.row(i)) zero_row = zero_row && v == 0;
    if (zero_row)
      throw std::logic_error("tableau: generator is a phase times identity");
    for (size_t j = i + 1; j < k(); ++j) {
      if (symplectic_product(gens_.row(i), gens_.row(j), p_) != 0)
        throw std::logic_error("tableau: generators do not commute");
    }
  }
  if (rank(gens_) != k())
    throw std::logic_error("tableau: generators are not independent");
}

WeylOp Tableau::element_from_exponents(std::span<const uint32_t> c) const {
  if (c.size() != k())
    throw std::invalid_argument("element_from_exponents: length mismatch");
  WeylOp acc = WeylOp::identity(p_, n_);
  for (size_t i = 0; i < k(); ++i) {
    if (c[i] % p_ == 0) continue;
    acc = multiply(acc, power(generator(i), c[i] % p_));
  }
  return acc;
}

std::vector<WeylOp> Tableau::group_elements(size_t cap) const {
  size_t total = 1;
  for (size_t i = 0; i < k(); ++i) {
    total *= p_;
    if (total > cap)
      throw std::length_error("group_elements: cap exceeded");
  }
  std::vector<WeylOp> out;
  out.reserve(total);
  std::vector<uint32_t> c(k(), 0);
  for (size_t idx = 0; idx < total; ++idx) {
    out.push_back(element_from_exponents(c));
    for (size_t d = 0; d < k(); ++d) {
      if (++c[d] < p_) break;
      c[d] = 0;
    }
  }
  return out;
}

std::string Tableau::canonical_key() const {
  Tableau c = canonicalize(*this);
  std::ostringstream os;
  os << c.p_ << ":" << c.n_ << ":" << c.log_trace_ << ":";
  for (size_t i = 0; i < c.k(); ++i) {
    for (uint32_t v : c.gens_.row(i)) os << v << ",";
    os << "|" << c.phases_[i] << ";";
  }
  return os.str();
}

bool Tableau::operator==(const Tableau& other) const {
  return p_ == other.p_ && n_ == other.n_ && log_trace_ == other.log_trace_ &&
         canonical_key() == other.canonical_key();
}

Tableau canonicalize(const Tableau& t) {
  // Gaussian elimination with exact group arithmetic: every row operation is
  // a product of signed generators, so phases stay consistent with the group.
  std::vector<WeylOp> rows;
  rows.reserve(t.k());
  for (size_t i = 0; i < t.k(); ++i) rows.push_back(t.generator(i));
  PrimeField f(t.p());
  size_t n2 = 2 * t.n();
  auto entry = [&](const WeylOp& w, size_t col) -> uint32_t {
    return col < t.n() ? w.x[col] : w.z[col - t.n()];
  };
  size_t r = 0;
  for (size_t col = 0; col < n2 && r < rows.size(); ++col) {
    size_t pivot = r;
    while (pivot < rows.size() && entry(rows[pivot], col) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    uint32_t e = entry(rows[r], col);
    if (e != 1) rows[r] = power(rows[r], f.inv(e));
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      uint32_t c = entry(rows[i], col);
      if (c != 0) rows[i] = multiply(rows[i], power(rows[r], f.neg(c)));
    }
    ++r;
  }
  Tableau out(t.p(), t.n());
  out.log_trace_ = t.log_trace();
  for (auto& w : rows) {
    auto row = weyl_to_row(w);
    out.gens_.append_row(row);
    out.phases_.push_back(w.phase);
  }
  return out;
}

std::optional<Tableau> postselect(const Tableau& t, const WeylOp& g) {
  if (g.p != t.p() || g.n() != t.n())
    throw std::invalid_argument("postselect: operator shape mismatch");
  if (!stabilizer_eligible_phase(g))
    throw std::invalid_argument("postselect: phase has order > p");
  if (g.is_identity_vector()) {
    // Projector is identity (phase 0) or annihilates everything.
    if (g.phase == 0) return t;
    return std::nullopt;
  }
  auto grow = weyl_to_row(g);
  std::vector<uint32_t> comm(t.k());
  size_t pivot = t.k();
  for (size_t i = 0; i < t.k(); ++i) {
    comm[i] = symplectic_product(grow, t.gens_.row(i), t.p());
    if (comm[i] != 0 && pivot == t.k()) pivot = i;
  }
  if (pivot == t.k()) {
    // g commutes with the whole group.
    auto c = solve(t.gens_.transposed(), grow);
    if (!c) {
      // Independent commuting generator: trace drops by a factor p.
      Tableau out = t;
      out.gens_.append_row(grow);
      out.phases_.push_back(g.phase);
      out.log_trace_ -= 1;
      return out;
    }
    WeylOp h = t.element_from_exponents(*c);
    if (h.phase == g.phase) return t;  // g already in the group
    return std::nullopt;               // phase-incompatible element present
  }
  // g anticommutes with generator `pivot`; repair the others with it.
  PrimeField f(t.p());
  std::vector<WeylOp> rows;
  rows.reserve(t.k());
  WeylOp hp = t.generator(pivot);
  uint32_t cp = comm[pivot];
  for (size_t i = 0; i < t.k(); ++i) {
    if (i == pivot) continue;
    WeylOp w = t.generator(i);
    if (comm[i] != 0) {
      uint32_t m = f.mul(f.neg(comm[i]), f.inv(cp));
      w = multiply(w, power(hp, m));
    }
    rows.push_back(w);
  }
  rows.push_back(g);
  Tableau out(t.p(), t.n());
  out.log_trace_ = t.log_trace() - 1;
  for (auto& w : rows) {
    auto row = weyl_to_row(w);
    out.gens_.append_row(row);
    out.phases_.push_back(w.phase);
  }
  return out;
}

Tableau tensor(const Tableau& a, const Tableau& b) {
  if (a.p() != b.p()) throw std::invalid_argument("tensor: p mismatch");
  size_t n = a.n() + b.n();
  Tableau out(a.p(), n);
  out.log_trace_ = a.log_trace() + b.log_trace();
  std::vector<uint32_t> row(2 * n);
  for (size_t i = 0; i < a.k(); ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (size_t c = 0; c < a.n(); ++c) {
      row[c] = a.generators()(i, c);
      row[n + c] = a.generators()(i, a.n() + c);
    }
    out.gens_.append_row(row);
    out.phases_.push_back(a.phases()[i]);
  }
  for (size_t i = 0; i < b.k(); ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (size_t c = 0; c < b.n(); ++c) {
      row[a.n() + c] = b.generators()(i, c);
      row[n + a.n() + c] = b.generators()(i, b.n() + c);
    }
    out.gens_.append_row(row);
    out.phases_.push_back(b.phases()[i]);
  }
  return out;
}

Tableau permute_qudits(const Tableau& t, std::span<const size_t> perm) {
  if (perm.size() != t.n())
    throw std::invalid_argument("permute_qudits: permutation length");
  std::vector<bool> seen(t.n(), false);
  for (size_t v : perm) {
    if (v >= t.n() || seen[v])
      throw std::invalid_argument("permute_qudits: not a permutation");
    seen[v] = true;
  }
  Tableau out(t.p(), t.n());
  out.log_trace_ = t.log_trace();
  std::vector<uint32_t> row(2 * t.n());
  for (size_t i = 0; i < t.k(); ++i) {
    for (size_t c = 0; c < t.n(); ++c) {
      row[perm[c]] = t.generators()(i, c);
      row[t.n() + perm[c]] = t.generators()(i, t.n() + c);
    }
    out.gens_.append_row(row);
    out.phases_.push_back(t.phases()[i]);
  }
  return out;
}

Tableau restrict_trace_out(const Tableau& t, std::span<const size_t> traced) {
  for (size_t q : traced)
    if (q >= t.n()) throw std::out_of_range("restrict_trace_out: bad index");
  std::vector<bool> drop(t.n(), false);
  for (size_t q : traced) drop[q] = true;
  std::vector<size_t> keep;
  for (size_t q = 0; q < t.n(); ++q)
    if (!drop[q]) keep.push_back(q);

  // Exponent vectors c with (sum_i c_i g_i) supported on the kept qudits.
  std::vector<size_t> traced_cols;
  for (size_t q : traced) {
    traced_cols.push_back(q);
    traced_cols.push_back(t.n() + q);
  }
  FpMatrix restricted = t.generators().select_columns(traced_cols);
  FpMatrix coeffs = kernel(restricted.transposed());

  std::vector<size_t> keep_cols;
  for (size_t q : keep) keep_cols.push_back(q);
  Tableau out(t.p(), keep.size());
  out.log_trace_ = t.log_trace();
  std::vector<uint32_t> row(2 * keep.size());
  for (size_t i = 0; i < coeffs.rows(); ++i) {
    WeylOp w = t.element_from_exponents(coeffs.row(i));
    for (size_t j = 0; j < keep.size(); ++j) {
      row[j] = w.x[keep[j]];
      row[keep.size() + j] = w.z[keep[j]];
    }
    out.gens_.append_row(row);
    out.phases_.push_back(w.phase);
  }
  return canonicalize(out);
}

namespace {

uint32_t random_phase(uint32_t p, std::mt19937_64& rng) {
  if (p == 2) return 2 * std::uniform_int_distribution<uint32_t>(0, 1)(rng);
  return std::uniform_int_distribution<uint32_t>(0, p - 1)(rng);
}

}  // namespace

Tableau sample_uniform(size_t n, uint32_t p, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("sample_uniform: n must be >= 1");
  PrimeField f(p);
  FpMatrix rows(p, 0, 2 * n);
  std::uniform_int_distribution<uint32_t> digit(0, p - 1);
  for (size_t i = 0; i < n; ++i) {
    // Constraint matrix for the symplectic complement of the current rows.
    FpMatrix constraints(p, 0, 2 * n);
    std::vector<uint32_t> flip(2 * n);
    for (size_t r = 0; r < rows.rows(); ++r) {
      for (size_t q = 0; q < n; ++q) {
        flip[q] = rows(r, n + q);          // <v, row> = v . J row
        flip[n + q] = f.neg(rows(r, q));
      }
      constraints.append_row(flip);
    }
    FpMatrix basis = kernel(constraints);  // dimension 2n - i
    while (true) {
      std::vector<uint32_t> coeff(basis.rows());
      for (auto& c : coeff) c = digit(rng);
      std::vector<uint32_t> v = row_times_matrix(coeff, basis);
      bool zero = std::all_of(v.begin(), v.end(),
                              [](uint32_t a) { return a == 0; });
      if (zero || in_row_span(rows, v)) continue;
      rows.append_row(v);
      break;
    }
  }
  Tableau out(p, n);
  out.set_log_trace(0);
  std::vector<WeylOp> gens;
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint32_t> x(rows.row(i).begin(), rows.row(i).begin() + n);
    std::vector<uint32_t> z(rows.row(i).begin() + n, rows.row(i).end());
    gens.push_back(WeylOp::make(p, x, z, random_phase(p, rng)));
  }
  return Tableau::from_generators(p, n, gens, 0);
}

size_t count_stabilizer_states(size_t n, uint32_t p) {
  size_t count = 1;
  for (size_t i = 0; i < n; ++i) count *= p;
  size_t q = 1;
  for (size_t i = 1; i <= n; ++i) {
    q *= p;
    count *= q + 1;
  }
  return count;
}

std::vector<Tableau> enumerate_all(size_t n, uint32_t p, size_t cap) {
  size_t total = count_stabilizer_states(n, p);
  if (total > cap) throw std::length_error("enumerate_all: cap exceeded");
  // Level-by-level extension of isotropic subspaces, deduplicated by the
  // canonical RREF of their row space.
  std::map<std::string, FpMatrix> level;
  level.emplace("", FpMatrix(p, 0, 2 * n));
  auto subspace_key = [](const FpMatrix& m) {
    auto r = rref(m).m;
    std::ostringstream os;
    for (size_t i = 0; i < r.rows(); ++i)
      for (uint32_t v : r.row(i)) os << v << ",";
    return os.str();
  };
  size_t nvec = 1;
  for (size_t i = 0; i < 2 * n; ++i) nvec *= p;
  for (size_t lvl = 0; lvl < n; ++lvl) {
    std::map<std::string, FpMatrix> next;
    for (const auto& [key, basis] : level) {
      std::vector<uint32_t> v(2 * n);
      for (size_t code = 1; code < nvec; ++code) {
        size_t c = code;
        for (size_t j = 0; j < 2 * n; ++j) {
          v[j] = c % p;
          c /= p;
        }
        bool ok = true;
        for (size_t r = 0; r < basis.rows() && ok; ++r)
          ok = symplectic_product(v, basis.row(r), p) == 0;
        if (!ok || in_row_span(basis, v)) continue;
        FpMatrix ext = basis;
        ext.append_row(v);
        ext = rref(ext).m;
        next.emplace(subspace_key(ext), std::move(ext));
      }
    }
    level = std::move(next);
  }
  std::vector<Tableau> out;
  out.reserve(total);
  size_t phase_count = 1;
  for (size_t i = 0; i < n; ++i) phase_count *= p;
  for (const auto& [key, basis] : level) {
    for (size_t code = 0; code < phase_count; ++code) {
      size_t c = code;
      std::vector<WeylOp> gens;
      for (size_t i = 0; i < n; ++i) {
        uint32_t digitv = static_cast<uint32_t>(c % p);
        c /= p;
        uint32_t phase = p == 2 ? 2 * digitv : digitv;
        std::vector<uint32_t> x(basis.row(i).begin(), basis.row(i).begin() + n);
        std::vector<uint32_t> z(basis.row(i).begin() + n, basis.row(i).end());
        gens.push_back(WeylOp::make(p, x, z, phase));
      }
      out.push_back(Tableau::from_generators(p, n, gens, 0));
    }
  }
  if (out.size() != total)
    throw std::logic_error("enumerate_all: state count mismatch");
  return out;
}

}  // namespace stabnet

#include "stabnet/fp.hpp"

#include <sstream>
#include <stdexcept>

namespace stabnet {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; uint64_t(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(uint32_t modulus) : p(modulus) {
  if (!is_prime(modulus)) {
    throw std::invalid_argument("PrimeField: modulus " +
                                std::to_string(modulus) + " is not prime");
  }
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint64_t base = a % p, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(acc);
}

uint32_t PrimeField::inv(uint32_t a) const {
  a %= p;
  if (a == 0) throw std::domain_error("PrimeField::inv of zero");
  return pow(a, p - 2);
}

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  if (!is_prime(p)) throw std::invalid_argument("FpMatrix: p must be prime");
}

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
  FpMatrix m(p, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(uint32_t p,
                             const std::vector<std::vector<int64_t>>& rows) {
  size_t r = rows.size();
  size_t c = r ? rows[0].size() : 0;
  FpMatrix m(p, r, c);
  PrimeField f(p);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
    for (size_t j = 0; j < c; ++j) m(i, j) = f.reduce(rows[i][j]);
  }
  return m;
}

void FpMatrix::append_row(std::span<const uint32_t> v) {
  if (rows_ != 0 && v.size() != cols_)
    throw std::invalid_argument("FpMatrix::append_row: length mismatch");
  if (rows_ == 0) cols_ = v.size();
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

void FpMatrix::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void FpMatrix::scale_row(size_t i, uint32_t c) {
  for (size_t k = 0; k < cols_; ++k)
    (*this)(i, k) = static_cast<uint32_t>(uint64_t((*this)(i, k)) * c % p_);
}

void FpMatrix::add_scaled_row(size_t i, size_t j, uint32_t c) {
  for (size_t k = 0; k < cols_; ++k)
    (*this)(i, k) =
        static_cast<uint32_t>(((*this)(i, k) + uint64_t((*this)(j, k)) * c) % p_);
}

FpMatrix FpMatrix::select_columns(std::span<const size_t> cols) const {
  FpMatrix out(p_, rows_, cols.size());
  for (size_t r = 0; r < rows_; ++r)
    for (size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix out(p_, cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  for (size_t r = 0; r < rows_; ++r) {
    os << (r ? "\n" : "") << "[";
    for (size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << "]";
  }
  return os.str();
}

RrefResult rref(const FpMatrix& m) {
  FpMatrix a = m;
  PrimeField f(a.p());
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    size_t pivot = r;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(r, pivot);
    a.scale_row(r, f.inv(a(r, col)));
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i != r && a(i, col) != 0) a.add_scaled_row(i, r, f.neg(a(i, col)));
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

size_t rank(const FpMatrix& m) { return rref(m).pivots.size(); }

FpMatrix kernel(const FpMatrix& m) {
  auto [r, pivots] = rref(m);
  PrimeField f(m.p());
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  FpMatrix out(m.p(), 0, m.cols());
  std::vector<uint32_t> v(m.cols());
  for (size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = f.neg(r(i, free_col));
    out.append_row(v);
  }
  return out;
}

std::optional<std::vector<uint32_t>> solve(const FpMatrix& m,
                                           std::span<const uint32_t> b) {
  if (b.size() != m.rows())
    throw std::invalid_argument("solve: rhs length mismatch");
  FpMatrix aug(m.p(), m.rows(), m.cols() + 1);
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r] % m.p();
  }
  auto [red, pivots] = rref(aug);
  std::vector<uint32_t> x(m.cols(), 0);
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;  // pivot in rhs column
    x[pivots[i]] = red(i, m.cols());
  }
  return x;
}

bool in_row_span(const FpMatrix& m, std::span<const uint32_t> v) {
  return solve(m.transposed(), v).has_value();
}

uint32_t beta_form(std::span<const uint32_t> v, std::span<const uint32_t> w,
                   uint32_t p) {
  if (v.size() != 6 || w.size() != 6)
    throw std::invalid_argument("beta_form: vectors must have length 6");
  uint64_t xx = 0, yy = 0;
  for (size_t i = 0; i < 3; ++i) {
    xx += uint64_t(v[i] % p) * (w[i] % p);
    yy += uint64_t(v[3 + i] % p) * (w[3 + i] % p);
  }
  return static_cast<uint32_t>(((xx % p) + p - (yy % p)) % p);
}

std::vector<uint32_t> row_times_matrix(std::span<const uint32_t> c,
                                       const FpMatrix& m) {
  if (c.size() != m.rows())
    throw std::invalid_argument("row_times_matrix: length mismatch");
  std::vector<uint32_t> out(m.cols(), 0);
  for (size_t r = 0; r < m.rows(); ++r) {
    if (c[r] == 0) continue;
    for (size_t j = 0; j < m.cols(); ++j)
      out[j] = static_cast<uint32_t>((out[j] + uint64_t(c[r]) * m(r, j)) % m.p());
  }
  return out;
}

}  // namespace stabnet

#ifndef STABNET_FP_HPP
#define STABNET_FP_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stabnet {

/// A prime modulus, validated at construction by trial division.
struct PrimeField {
  uint32_t p;

  explicit PrimeField(uint32_t modulus);

  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + p - b % p) % p; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((uint64_t(a) * b) % p);
  }
  uint32_t neg(uint32_t a) const { return (p - a % p) % p; }
  uint32_t pow(uint32_t a, uint64_t e) const;
  // Inverse by Fermat exponentiation; a must be nonzero mod p.
  uint32_t inv(uint32_t a) const;
  uint32_t reduce(int64_t a) const {
    int64_t r = a % int64_t(p);
    return static_cast<uint32_t>(r < 0 ? r + p : r);
  }
};

bool is_prime(uint32_t n);

/// Dense row-major matrix with entries in [0, p).
class FpMatrix {
public:
  FpMatrix() = default;
  FpMatrix(uint32_t p, size_t rows, size_t cols);

  static FpMatrix identity(uint32_t p, size_t n);
  // Builds a matrix from signed integer literals, reducing mod p.
  static FpMatrix from_rows(uint32_t p,
                            const std::vector<std::vector<int64_t>>& rows);

  uint32_t p() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  uint32_t operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  uint32_t& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }

  std::span<const uint32_t> row(size_t r) const {
    return {a_.data() + r * cols_, cols_};
  }
  std::span<uint32_t> row(size_t r) {
    return {a_.data() + r * cols_, cols_};
  }

  void append_row(std::span<const uint32_t> v);
  void swap_rows(size_t i, size_t j);
  // row(i) *= c
  void scale_row(size_t i, uint32_t c);
  // row(i) += c * row(j)
  void add_scaled_row(size_t i, size_t j, uint32_t c);
  FpMatrix select_columns(std::span<const size_t> cols) const;
  FpMatrix transposed() const;

  bool operator==(const FpMatrix& other) const = default;

  std::string to_string() const;

private:
  uint32_t p_ = 2;
  size_t rows_ = 0, cols_ = 0;
  std::vector<uint32_t> a_;
};

struct RrefResult {
  FpMatrix m;
  std::vector<size_t> pivots;
};

/// Reduced row-echelon form over GF(p); row span is preserved.
RrefResult rref(const FpMatrix& m);
size_t rank(const FpMatrix& m);
/// Basis of {v : M v = 0}, one vector per row of the result.
FpMatrix kernel(const FpMatrix& m);
/// Solves M x = b; nullopt when b is outside the column span.
std::optional<std::vector<uint32_t>> solve(const FpMatrix& m,
                                           std::span<const uint32_t> b);
/// Is v in the row span of m?
bool in_row_span(const FpMatrix& m, std::span<const uint32_t> v);

/// beta((x,y),(x',y')) = x.x' - y.y' on F_p^3 + F_p^3 (length-6 vectors).
uint32_t beta_form(std::span<const uint32_t> v, std::span<const uint32_t> w,
                   uint32_t p);

// Row-vector by matrix product c * M (c has m.rows() entries).
std::vector<uint32_t> row_times_matrix(std::span<const uint32_t> c,
                                       const FpMatrix& m);

}  // namespace stabnet

#endif

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include <unsupported/Eigen/KroneckerProduct>

#include "stabnet/moments.hpp"
#include "stabnet/tableau.hpp"

using namespace stabnet;

namespace {

// Independent permutation-operator construction on ((C^p)^n)^{x3}:
// R(pi) |v1 v2 v3> = |v_{pi^{-1}(1)} v_{pi^{-1}(2)} v_{pi^{-1}(3)}>.
Eigen::MatrixXd permutation_operator(const std::array<int, 3>& pi, uint32_t p,
                                     size_t n) {
  size_t d1 = pow_sz(p, n);
  size_t dim = d1 * d1 * d1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  std::array<int, 3> inv{};
  for (int i = 0; i < 3; ++i) inv[pi[i]] = i;
  for (size_t col = 0; col < dim; ++col) {
    std::array<size_t, 3> blocks{col / (d1 * d1), col / d1 % d1, col % d1};
    size_t row = 0;
    for (int i = 0; i < 3; ++i) row = row * d1 + blocks[inv[i]];
    m(row, col) = 1.0;
  }
  return m;
}

const std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2},
                                                {1, 2, 0},
                                                {2, 0, 1},
                                                {1, 0, 2},
                                                {2, 1, 0},
                                                {0, 2, 1}}};

}  // namespace

TEST_CASE("third moment formula has trace exactly 1") {
  for (auto [p, n] : std::vector<std::pair<uint32_t, size_t>>{
           {2, 1}, {2, 2}, {3, 2}}) {
    Eigen::MatrixXd m = third_moment_formula(n, PrimeField(p));
    CHECK(std::abs(m.trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("formula rejects n=1 for odd p") {
  CHECK_THROWS_AS(third_moment_formula(1, PrimeField(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(third_moment_formula(1, PrimeField(5)),
                  std::invalid_argument);
  CHECK_NOTHROW(third_moment_formula(1, PrimeField(2)));
}

TEST_CASE("p=2 formula equals the permutation-operator average") {
  for (size_t n : {1u, 2u}) {
    size_t d = pow_sz(2, n);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d * d * d, d * d * d);
    for (const auto& pi : kPerms) sum += permutation_operator(pi, 2, n);
    sum /= double(d) * double(d + 1) * double(d + 2);
    Eigen::MatrixXd formula = third_moment_formula(n, PrimeField(2));
    CHECK((sum - formula).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("R patterns of the p=2 elements are the permutation actions") {
  auto sigma = build_sigma3(PrimeField(2));
  for (size_t i = 0; i < 6; ++i) {
    Eigen::MatrixXd r = r_matrix(sigma[i], 2);
    CHECK((r - permutation_operator(kPerms[i], 2, 2)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("exhaustive third moment matches the formula for (2,1)") {
  auto rep = third_moment_check_exhaustive(1, PrimeField(2));
  CHECK(rep.pass);
  CHECK(rep.max_abs_deviation < 1e-10);
}

TEST_CASE("exhaustive third moment matches the formula for (2,2)") {
  auto rep = third_moment_check_exhaustive(2, PrimeField(2));
  CHECK(rep.pass);
}

TEST_CASE("exhaustive third moment matches the formula for (3,2)") {
  auto rep = third_moment_check_exhaustive(2, PrimeField(3));
  CHECK(rep.pass);
  CHECK(rep.max_abs_deviation < 1e-10);
  CHECK(rep.terms_checked == 531441);  // 729^2 entries
}

TEST_CASE("Monte Carlo third moment within 5 standard errors, (3,2)") {
  auto rep = third_moment_check_mc(2, PrimeField(3), 10000, 777);
  CHECK(rep.pass);
}

TEST_CASE("formula is Hermitian, PSD and replica-permutation invariant") {
  Eigen::MatrixXd m = third_moment_formula(2, PrimeField(3));
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
  for (const auto& pi : kPerms) {
    Eigen::MatrixXd r = permutation_operator(pi, 3, 2);
    CHECK((r * m - m).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((m * r - m).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("random Clifford words are unitary") {
  std::mt19937_64 rng(101);
  for (uint32_t p : {2u, 3u}) {
    CMat u = random_clifford_dense(2, PrimeField(p), 20, rng);
    CMat id = CMat::Identity(u.rows(), u.cols());
    CHECK((u * u.adjoint() - id).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("commutant membership for sampled Clifford words") {
  for (uint32_t p : {2u, 3u}) {
    auto rep = commutant_check(2, PrimeField(p), 12, 2024);
    CHECK(rep.pass);
    CHECK(rep.max_abs_deviation <= 1e-9);
  }
}

TEST_CASE("identity commutes exactly") {
  auto sigma = build_sigma3(PrimeField(3));
  size_t dim = pow_sz(3, 3 * 2);
  CMat id = CMat::Identity(dim, dim);
  for (const auto& t : sigma)
    CHECK(commutator_max_abs(r_pattern(t, 2), id) == 0.0);
}

TEST_CASE("non-Clifford control fails the commutant check for odd p") {
  auto rep = negative_control_check(2, PrimeField(3));
  CHECK(rep.pass);                        // pass = violation detected
  CHECK(rep.max_abs_deviation > 1e-3);
}

TEST_CASE("for p=2 permutations commute with every triple tensor power") {
  // Permutation operators commute with U^{x3} for any unitary, so the
  // negative control is structurally impossible at p=2.
  auto sigma = build_sigma3(PrimeField(2));
  CMat t = non_clifford_gate(2, PrimeField(2));
  CMat u3 = Eigen::kroneckerProduct(t, Eigen::kroneckerProduct(t, t).eval());
  for (const auto& s : sigma)
    CHECK(commutator_max_abs(r_pattern(s, 2), u3) < 1e-12);
}

TEST_CASE("R(T) operators are linearly independent with metric Gram") {
  for (uint32_t p : {2u, 3u, 5u}) {
    auto rep = independence_check(2, PrimeField(p));
    CHECK(rep.gram_nonsingular);
    CHECK(rep.gram_matches_metric);
    CHECK(rep.dual_vectors_identify);
    CHECK(rep.pass);
  }
}

TEST_CASE("second moment matches (I+F)/D(D+1) exhaustively") {
  for (uint32_t p : {2u, 3u}) {
    auto rep = second_moment_check_exhaustive(1, PrimeField(p));
    CHECK(rep.pass);
    CHECK(rep.max_abs_deviation < 1e-10);
  }
}

TEST_CASE("second moment Monte Carlo within 5 standard errors, (5,2)") {
  auto rep = second_moment_check_mc(2, PrimeField(5), 8000, 555);
  CHECK(rep.pass);
}

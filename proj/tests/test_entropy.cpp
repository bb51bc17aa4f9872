#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "stabnet/dense.hpp"
#include "stabnet/entropy.hpp"
#include "stabnet/tableau.hpp"

using namespace stabnet;

namespace {

// (1/sqrt p) sum_i |i...i> on n qudits.
Tableau ghz_n(uint32_t p, size_t n) {
  std::vector<WeylOp> gens;
  std::vector<uint32_t> x(n, 1), z(n, 0);
  gens.push_back(WeylOp::make(p, x, z));
  for (size_t i = 0; i + 1 < n; ++i) {
    std::vector<uint32_t> zz(n, 0);
    zz[i] = 1;
    zz[i + 1] = p - 1;
    gens.push_back(WeylOp::make(p, std::vector<uint32_t>(n, 0), zz));
  }
  return Tableau::from_generators(p, n, gens, 0);
}

std::vector<size_t> complement_of(size_t n, std::span<const size_t> sub) {
  std::set<size_t> s(sub.begin(), sub.end());
  std::vector<size_t> out;
  for (size_t q = 0; q < n; ++q)
    if (!s.count(q)) out.push_back(q);
  return out;
}

// Random partition of [0,n) into three (possibly empty) parts.
std::array<std::vector<size_t>, 3> random_partition(size_t n,
                                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<int> part(0, 2);
  std::array<std::vector<size_t>, 3> parts;
  for (size_t q = 0; q < n; ++q) parts[part(rng)].push_back(q);
  return parts;
}

}  // namespace

TEST_CASE("entropy of product states vanishes on every subset") {
  Tableau t = Tableau::zeros(3, 4);
  std::vector<std::vector<size_t>> subsets{{0}, {1, 2}, {0, 3}, {0, 1, 2, 3}};
  for (auto& s : subsets) CHECK(entropy(t, s) == 0);
}

TEST_CASE("entropy of a Bell pair is 1 on either side") {
  for (uint32_t p : {2u, 3u, 5u}) {
    Tableau bell = Tableau::bell_pair(p);
    std::vector<size_t> left{0}, right{1};
    CHECK(entropy(bell, left) == 1);
    CHECK(entropy(bell, right) == 1);
  }
}

TEST_CASE("entropy matches the dense oracle on random states") {
  std::mt19937_64 rng(61);
  int done = 0;
  for (int rep = 0; rep < 200; ++rep) {
    uint32_t p = rep % 2 ? 2 : 3;
    size_t n = 2 + rep % (p == 2 ? 4 : 3);  // p^n <= 243
    Tableau t = sample_uniform(n, p, rng);
    std::uniform_int_distribution<size_t> pick(1, n - 1);
    size_t asz = pick(rng);
    std::vector<size_t> region;
    for (size_t q = 0; q < asz; ++q) region.push_back(q);
    double dense =
        dense_entropy(tableau_to_dense_operator(t), p, n, region);
    CHECK(std::abs(dense - std::round(dense)) < 1e-9);
    CHECK(entropy(t, region) == int64_t(std::round(dense)));
    ++done;
  }
  CHECK(done == 200);
}

TEST_CASE("entropy equals the entropy of the complement for pure states") {
  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 50; ++rep) {
    Tableau t = sample_uniform(5, 2, rng);
    std::vector<size_t> a{0, 2, 4};
    auto comp = complement_of(5, a);
    CHECK(entropy(t, a) == entropy(t, comp));
  }
}

TEST_CASE("mutual information of a Bell pair with empty C is 2") {
  Tableau bell = Tableau::bell_pair(3);
  std::vector<size_t> a{0}, b{1};
  CHECK(mutual_information(bell, a, b) == 2);
}

TEST_CASE("overlapping subsets are rejected") {
  Tableau bell = Tableau::bell_pair(3);
  std::vector<size_t> a{0}, b{0};
  CHECK_THROWS_AS(mutual_information(bell, a, b), std::invalid_argument);
}

TEST_CASE("GHZ triple with a spectator leg: I(A:B)=1, I3=+1") {
  // Flat entropies: S=1 for all single parties and S(AB)=1.
  for (uint32_t p : {2u, 3u}) {
    Tableau ghz4 = ghz_n(p, 4);
    std::vector<size_t> a{0}, b{1}, c{2};
    CHECK(mutual_information(ghz4, a, b) == 1);
    CHECK(tripartite_information(ghz4, a, b, c) == 1);
  }
}

TEST_CASE("complete tripartition of GHZ has I3 = 0 (dense-checked)") {
  Tableau ghz = Tableau::ghz(3);
  std::vector<size_t> a{0}, b{1}, c{2};
  CHECK(tripartite_information(ghz, a, b, c) == 0);
  // dense oracle route
  CMat rho = tableau_to_dense_operator(ghz);
  auto s = [&](std::vector<size_t> sub) {
    return dense_entropy(rho, 3, 3, sub);
  };
  double i3 = s({0}) + s({1}) + s({2}) - s({0, 1}) - s({0, 2}) - s({1, 2});
  CHECK(std::abs(i3 - 0.0) < 1e-9);
}

TEST_CASE("four-party perfect tensor found by entropy filtering: I3 = -2m") {
  std::mt19937_64 rng(63);
  std::array<std::vector<size_t>, 4> parts{{{0, 1}, {2, 3}, {4, 5}, {6, 7}}};
  bool found = false;
  for (int attempt = 0; attempt < 20000 && !found; ++attempt) {
    Tableau t = sample_uniform(8, 2, rng);
    bool perfect = true;
    for (auto& part : parts) perfect = perfect && entropy(t, part) == 2;
    if (perfect) {
      for (int j = 1; j < 4 && perfect; ++j) {
        std::vector<size_t> pair = parts[0];
        pair.insert(pair.end(), parts[j].begin(), parts[j].end());
        std::sort(pair.begin(), pair.end());
        perfect = entropy(t, pair) == 4;
      }
    }
    if (!perfect) continue;
    found = true;
    CHECK(tripartite_information(t, parts[0], parts[1], parts[2]) == -4);
  }
  CHECK(found);
}

TEST_CASE("pt moment of GHZ is 2 for any p") {
  for (uint32_t p : {2u, 3u, 5u}) {
    Tableau ghz = Tableau::ghz(p);
    std::vector<size_t> a{0}, b{1};
    CHECK(pt_moment3(ghz, a, b) == 2);
  }
}

TEST_CASE("pt moment of a single Bell pair is 2") {
  for (uint32_t p : {2u, 3u}) {
    Tableau bell = Tableau::bell_pair(p);
    std::vector<size_t> a{0}, b{1};
    CHECK(pt_moment3(bell, a, b) == 2);
    CHECK(pt_moment3_by_enumeration(bell, a, b) == 2);
  }
}

TEST_CASE("pt moment matches dense partial-transpose cube on random states") {
  std::mt19937_64 rng(64);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    uint32_t p = rep % 2 ? 2 : 3;
    size_t n = 2 + rep % (p == 2 ? 4 : 3);
    if (p == 2 && rep % 7 == 0) n = 5;
    Tableau t = sample_uniform(n, p, rng);
    auto parts = random_partition(n, rng);
    if (parts[0].empty() && parts[1].empty()) continue;
    int64_t m = pt_moment3(t, parts[0], parts[1]);
    // dense route
    std::vector<size_t> ab = parts[0];
    ab.insert(ab.end(), parts[1].begin(), parts[1].end());
    std::sort(ab.begin(), ab.end());
    CMat rho_ab = partial_trace(tableau_to_dense_operator(t), p, n, ab);
    std::set<size_t> bset(parts[1].begin(), parts[1].end());
    std::vector<size_t> b_pos;
    for (size_t i = 0; i < ab.size(); ++i)
      if (bset.count(ab[i])) b_pos.push_back(i);
    double dense = dense_pt3(rho_ab, p, ab.size(), b_pos);
    double expect = std::pow(double(p), -double(m));
    CHECK(std::abs(dense - expect) < 1e-9);
    ++checked;
  }
  CHECK(checked >= 180);
}

TEST_CASE("pt moment rank route equals subgroup enumeration route") {
  std::mt19937_64 rng(65);
  for (int rep = 0; rep < 60; ++rep) {
    uint32_t p = rep % 2 ? 2 : 3;
    size_t n = 2 + rep % 4;
    Tableau t = sample_uniform(n, p, rng);
    auto parts = random_partition(n, rng);
    if (parts[0].empty() && parts[1].empty()) continue;
    CHECK(pt_moment3(t, parts[0], parts[1]) ==
          pt_moment3_by_enumeration(t, parts[0], parts[1]));
  }
}

TEST_CASE("ghz_content of GHZ is (0,0,0,1)") {
  for (uint32_t p : {2u, 3u, 5u}) {
    GhzContent gc = ghz_content(Tableau::ghz(p), {{0}}, {{1}}, {{2}});
    CHECK(gc.a == 0);
    CHECK(gc.b == 0);
    CHECK(gc.c == 0);
    CHECK(gc.g == 1);
  }
}

TEST_CASE("ghz_content of the Bell triangle is (1,1,1,0)") {
  for (uint32_t p : {2u, 3u}) {
    Tableau t = tensor(tensor(Tableau::bell_pair(p), Tableau::bell_pair(p)),
                       Tableau::bell_pair(p));
    // pairs: (0,1) A-B, (2,3) A-C, (4,5) B-C
    std::vector<size_t> a{0, 2}, b{1, 4}, c{3, 5};
    GhzContent gc = ghz_content(t, a, b, c);
    CHECK(gc.a == 1);
    CHECK(gc.b == 1);
    CHECK(gc.c == 1);
    CHECK(gc.g == 0);
  }
}

TEST_CASE("ghz_content reproduces dense values and the parity identity") {
  std::mt19937_64 rng(66);
  int checked = 0;
  for (int rep = 0; rep < 500 && checked < 100; ++rep) {
    uint32_t p = rep % 2 ? 2 : 3;
    size_t n = 3 + rep % 3;
    Tableau t = sample_uniform(n, p, rng);
    auto parts = random_partition(n, rng);
    if (parts[0].empty() || parts[1].empty()) continue;
    GhzContent gc = ghz_content(t, parts[0], parts[1], parts[2]);
    int64_t sa = entropy(t, parts[0]);
    int64_t sb = entropy(t, parts[1]);
    int64_t sc = entropy(t, parts[2]);
    // m = 2(a+b+c+g) against the dense pt3 oracle
    std::vector<size_t> ab = parts[0];
    ab.insert(ab.end(), parts[1].begin(), parts[1].end());
    std::sort(ab.begin(), ab.end());
    CMat rho_ab = partial_trace(tableau_to_dense_operator(t), p, n, ab);
    std::set<size_t> bset(parts[1].begin(), parts[1].end());
    std::vector<size_t> b_pos;
    for (size_t i = 0; i < ab.size(); ++i)
      if (bset.count(ab[i])) b_pos.push_back(i);
    double dense = dense_pt3(rho_ab, p, ab.size(), b_pos);
    double expect =
        std::pow(double(p), -2.0 * double(gc.a + gc.b + gc.c + gc.g));
    CHECK(std::abs(dense - expect) < 1e-9);
    CHECK((sa + sb + sc) % 2 == gc.g % 2);
    CHECK(sa + sb + sc == 2 * (gc.a + gc.b + gc.c) + 3 * gc.g);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("fourpartite report for two independent Bell-pair bundles") {
  uint32_t p = 3;
  Tableau t = Tableau::bell_pair(p);
  for (int i = 0; i < 3; ++i) t = tensor(t, Tableau::bell_pair(p));
  // qudits (0,1),(2,3) pair A1-A2; (4,5),(6,7) pair A3-A4
  std::array<std::vector<size_t>, 4> parts{
      {{0, 2}, {1, 3}, {4, 6}, {5, 7}}};
  FourpartiteReport rep = fourpartite_report(t, parts);
  CHECK(rep.t[0][1] == 2);
  CHECK(rep.t[2][3] == 2);
  CHECK(rep.t[0][2] == 0);
  CHECK(rep.t[0][3] == 0);
  CHECK(rep.t[1][2] == 0);
  CHECK(rep.t[1][3] == 0);
  CHECK(rep.i3 == 0);
  for (int i = 0; i < 4; ++i) CHECK(rep.residual_entropies[i] == 0);
}

TEST_CASE("fourpartite i3 for overlapping GHZ pair matches the dense oracle") {
  uint32_t p = 2;
  Tableau t = tensor(Tableau::ghz(p), Tableau::ghz(p));
  // GHZ on (0,1,2) across A1,A2,A3; GHZ on (3,4,5) across A2,A3,A4.
  std::array<std::vector<size_t>, 4> parts{{{0}, {1, 3}, {2, 4}, {5}}};
  FourpartiteReport rep = fourpartite_report(t, parts);
  CMat rho = tableau_to_dense_operator(t);
  auto s = [&](std::vector<size_t> sub) {
    std::sort(sub.begin(), sub.end());
    return dense_entropy(rho, p, 6, sub);
  };
  auto join = [](std::vector<size_t> a, const std::vector<size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  double i3 = s(parts[0]) + s(parts[1]) + s(parts[2]) -
              s(join(parts[0], parts[1])) - s(join(parts[0], parts[2])) -
              s(join(parts[1], parts[2])) + s(join(join(parts[0], parts[1]), parts[2]));
  CHECK(std::abs(double(rep.i3) - i3) < 1e-9);
}

TEST_CASE("i3 is independent of the choice of three parties") {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 25; ++rep) {
    Tableau t = sample_uniform(4, 3, rng);
    std::array<std::vector<size_t>, 4> parts{{{0}, {1}, {2}, {3}}};
    int64_t ref = tripartite_information(t, parts[0], parts[1], parts[2]);
    CHECK(tripartite_information(t, parts[0], parts[1], parts[3]) == ref);
    CHECK(tripartite_information(t, parts[0], parts[2], parts[3]) == ref);
    CHECK(tripartite_information(t, parts[1], parts[2], parts[3]) == ref);
  }
}

TEST_CASE("mixed states are rejected by the pure-state operations") {
  Tableau mixed = restrict_trace_out(Tableau::bell_pair(3), {{1}});
  REQUIRE_FALSE(mixed.pure());
  std::vector<size_t> a{0}, none{};
  CHECK_THROWS_AS(entropy(mixed, a), std::invalid_argument);
  CHECK_THROWS_AS(pt_moment3(mixed, a, none), std::invalid_argument);
}

TEST_CASE("ghz_content rejects non-partitions") {
  Tableau ghz = Tableau::ghz(3);
  std::vector<size_t> a{0}, b{1}, c{1};
  CHECK_THROWS(ghz_content(ghz, a, b, c));
  std::vector<size_t> short_c{};
  CHECK_THROWS(ghz_content(ghz, a, b, short_c));
}

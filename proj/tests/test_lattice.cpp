#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ktoric/lattice.hpp"

#include <functional>
#include <random>

using namespace ktoric;

namespace {

// Independent oracle: the i-th determinantal divisor is the gcd of all i×i
// minors, and d_i = D_i / D_{i-1}.
Integer minor(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows[i], cols[j]);
  return determinant(sub);
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = 0;
    subsets(m.rows(), k, [&](const std::vector<std::size_t>& r) {
      subsets(m.cols(), k, [&](const std::vector<std::size_t>& c) {
        Integer det = minor(m, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      });
    });
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

void check_snf(const IntMatrix& m, const SNFResult& s) {
  CHECK(s.u * m * s.v == s.d);
  CHECK(abs(determinant(s.u)) == 1);
  CHECK(abs(determinant(s.v)) == 1);
  CHECK(s.v * s.v_inverse == IntMatrix::identity(m.cols()));
  CHECK(s.d.is_diagonal());
  auto diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    CHECK(diag[i] >= 0);
    if (i + 1 < diag.size() && diag[i] != 0) CHECK(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
    if (diag[i] == 0 && i + 1 < diag.size()) CHECK(diag[i + 1] == 0);
  }
}

}  // namespace

TEST_CASE("smith normal form of the identity is trivial") {
  auto s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.u == IntMatrix::identity(3));
  CHECK(s.d == IntMatrix::identity(3));
  CHECK(s.v == IntMatrix::identity(3));
}

TEST_CASE("smith normal form of diag(2,3) is diag(1,6)") {
  IntMatrix m{{2, 0}, {0, 3}};
  auto s = smith_normal_form(m);
  check_snf(m, s);
  CHECK(s.d == IntMatrix{{1, 0}, {0, 6}});
  CHECK(invariant_factors_by_minors(m) == std::vector<Integer>{1, 6});
}

TEST_CASE("smith normal form of the CP1 column") {
  IntMatrix m{{-1}, {1}};
  auto s = smith_normal_form(m);
  check_snf(m, s);
  CHECK(s.d == IntMatrix{{1}, {0}});
}

TEST_CASE("smith normal form handles empty and zero matrices") {
  IntMatrix empty(0, 3);
  auto s = smith_normal_form(empty);
  CHECK(s.rank() == 0);
  CHECK(s.v == IntMatrix::identity(3));
  IntMatrix zero(2, 2);
  auto z = smith_normal_form(zero);
  check_snf(zero, z);
  CHECK(z.rank() == 0);
}

TEST_CASE("smith normal form agrees with determinantal divisors on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    auto m = random_matrix(rng, dim(rng), dim(rng), -9, 9);
    auto s = smith_normal_form(m);
    check_snf(m, s);
    CHECK(s.diagonal() == invariant_factors_by_minors(m));
  }
}

TEST_CASE("determinant of small matrices") {
  CHECK(determinant(IntMatrix{{1, 2}, {3, 4}}) == -2);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{2, 0, 0}, {0, 3, 0}, {1, 1, 5}}) == 30);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("kernel basis examples") {
  auto cp1 = kernel_basis(IntMatrix{{-1, 1}});
  REQUIRE(cp1.size() == 1);
  CHECK(cp1[0] == IntVector{1, 1});

  CHECK(kernel_basis(IntMatrix::identity(2)).empty());

  auto cp2 = kernel_basis(IntMatrix{{-1, 0, 1}, {0, -1, 1}});
  REQUIRE(cp2.size() == 1);
  CHECK(cp2[0] == IntVector{1, 1, 1});

  auto square = kernel_basis(IntMatrix{{-1, 1, 0, 0}, {0, 0, -1, 1}});
  REQUIRE(square.size() == 2);
  CHECK(square[0] == IntVector{1, 1, 0, 0});
  CHECK(square[1] == IntVector{0, 0, 1, 1});
}

TEST_CASE("kernel bases are saturated and annihilated") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> rows(1, 3), cols(2, 5);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, rows(rng), cols(rng), -4, 4);
    auto basis = kernel_basis(m);
    auto s = smith_normal_form(m);
    CHECK(basis.size() == m.cols() - s.rank());
    for (const auto& v : basis) CHECK(is_zero(m * v));
    if (basis.empty()) continue;
    auto stacked = smith_normal_form(IntMatrix::from_rows(basis, m.cols()));
    for (const auto& d : stacked.diagonal()) CHECK(d == 1);
    // Hermite canonical: recomputing from a shuffled generating set is stable.
    std::vector<IntVector> shuffled(basis.rbegin(), basis.rend());
    if (shuffled.size() > 1)
      for (std::size_t j = 0; j < shuffled[0].size(); ++j) shuffled[0][j] += 3 * shuffled[1][j];
    auto again = hermite_normal_form(IntMatrix::from_rows(shuffled, m.cols()));
    CHECK(again == IntMatrix::from_rows(basis, m.cols()));
  }
}

TEST_CASE("primitive vectors") {
  CHECK(is_primitive(IntVector{1, 1}));
  CHECK_FALSE(is_primitive(IntVector{2, 4}));
  CHECK(is_primitive(IntVector{0, -1}));
  CHECK_THROWS_AS(is_primitive(IntVector{0, 0}), Error);
}

TEST_CASE("quotient lattice normal forms") {
  std::vector<IntVector> kill_second{{0, 1}};
  QuotientLattice q1(2, kill_second);
  CHECK(q1.normal_form(IntVector{3, 7}) == IntVector{3, 0});
  CHECK(q1.free_rank() == 1);

  std::vector<IntVector> two{{2}};
  QuotientLattice q2(1, two);
  CHECK(q2.normal_form(IntVector{5}) == IntVector{1});
  CHECK(q2.normal_form(IntVector{-5}) == IntVector{1});
  CHECK(q2.torsion_orders() == std::vector<Integer>{2});
  CHECK(q2.free_rank() == 0);

  std::vector<IntVector> diagonal{{1, 1}};
  QuotientLattice q3(2, diagonal);
  CHECK(q3.equivalent(IntVector{2, 3}, IntVector{-1, 0}));
  CHECK_FALSE(q3.equivalent(IntVector{2, 3}, IntVector{0, 0}));
}

TEST_CASE("quotient normal form is a coset invariant") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> small(-6, 6);
  std::uniform_int_distribution<std::size_t> rank(1, 4), count(0, 3);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t r = rank(rng);
    std::vector<IntVector> rels(count(rng), IntVector(r));
    for (auto& v : rels)
      for (auto& x : v) x = small(rng);
    QuotientLattice q(r, rels);
    IntVector v(r);
    for (auto& x : v) x = small(rng);
    auto nf = q.normal_form(v);
    CHECK(q.normal_form(nf) == nf);
    IntVector shifted = v;
    for (const auto& rel : rels) {
      Integer c = small(rng);
      for (std::size_t j = 0; j < r; ++j) shifted[j] += c * rel[j];
    }
    CHECK(q.normal_form(shifted) == nf);
  }
}

#include <doctest.h>

#include <random>

#include "loopmot/errors.hpp"
#include "loopmot/exactlin.hpp"

using namespace loopmot;

TEST_CASE("signature of small matrices") {
  CHECK(signature({{rat(-2), rat(-3)}, {rat(-3), rat(-2)}}) == Signature{1, 1, 0});
  CHECK(signature({{rat(-2)}}) == Signature{0, 1, 0});
  CHECK(signature({{rat(0), rat(0)}, {rat(0), rat(0)}}) == Signature{0, 0, 2});
  // Hyperbolic plane: zero diagonal, indefinite.
  CHECK(signature({{rat(0), rat(1)}, {rat(1), rat(0)}}) == Signature{1, 1, 0});
  CHECK(signature({{rat(2), rat(0)}, {rat(0), rat(3)}}) == Signature{2, 0, 0});
  CHECK(signature({}) == Signature{0, 0, 0});
}

TEST_CASE("signature counts match dimension and rank") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    RatMatrix m(n, RatVector(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        m[i][j] = rat(entry(rng));
        m[j][i] = m[i][j];
      }
    const Signature sig = signature(m);
    CHECK(sig.pos + sig.neg + sig.zero == n);
    CHECK(sig.pos + sig.neg == rank_symmetric(m));
    // det != 0 iff full rank, and the determinant sign matches (-1)^neg.
    const Rational det = determinant(m);
    if (sig.zero == 0)
      CHECK(sign(det) == (sig.neg % 2 == 0 ? 1 : -1));
    else
      CHECK(det == 0);
  }
}

TEST_CASE("determinant against cofactor expansion") {
  auto cofactor_det = [](const RatMatrix& m, auto&& self) -> Rational {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Rational acc = 0;
    for (std::size_t r = 0; r < n; ++r) {
      RatMatrix minor;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        RatVector row(m[i].begin() + 1, m[i].end());
        minor.push_back(std::move(row));
      }
      const Rational term = m[r][0] * self(minor, self);
      acc += (r % 2 == 0) ? term : -term;
    }
    return acc;
  };

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    RatMatrix m(n, RatVector(n, 0));
    for (auto& row : m)
      for (auto& x : row) x = rat(num(rng), den(rng));
    CHECK(determinant(m) == cofactor_det(m, cofactor_det));
  }
}

TEST_CASE("integer rank") {
  CHECK(rank_integer({{1, 2}, {2, 4}}) == 1);
  CHECK(rank_integer({{1, 0, 0}, {0, 1, 0}}) == 2);
  CHECK(rank_integer({{0, 0}, {0, 0}}) == 0);
  CHECK(rank_integer({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 2);
}

TEST_CASE("psd factorization reconstructs the matrix") {
  // Gram matrix of rank 2.
  const RatMatrix m = {{rat(2), rat(-1), rat(-1)},
                       {rat(-1), rat(2), rat(-1)},
                       {rat(-1), rat(-1), rat(2)}};
  const PsdFactorization f = ldlt_psd(m);
  CHECK(f.rank == 2);
  const int n = 3;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational sum = 0;
      for (int k = 0; k < f.rank; ++k) sum += f.lower[i][k] * f.pivots[k] * f.lower[j][k];
      CHECK(sum == m[f.perm[i]][f.perm[j]]);
    }
  CHECK_THROWS_AS(ldlt_psd({{rat(-1)}}), DomainError);
}

TEST_CASE("squarefree kernel") {
  CHECK(squarefree_kernel(rat(5)) == 5);
  CHECK(squarefree_kernel(rat(8)) == 2);
  CHECK(squarefree_kernel(rat(-4)) == -1);
  CHECK(squarefree_kernel(rat(4)) == 1);
  CHECK(squarefree_kernel(rat(1, 2)) == 2);      // 1/2 ~ 2
  CHECK(squarefree_kernel(rat(9, 25)) == 1);     // perfect square
  CHECK(squarefree_kernel(rat(-12, 49)) == -3);  // -(2^2*3)/7^2
  CHECK(squarefree_kernel(rat(360)) == 10);      // 2^3 3^2 5
  CHECK_THROWS_AS(squarefree_kernel(rat(0)), DomainError);
}

TEST_CASE("squarefree kernel survives large prime factors") {
  // 1000003 and 1000033 exceed the trial-division bound.
  const Rational big = rat(1000003) * rat(1000003) * rat(1000033);
  CHECK(squarefree_kernel(big) == 1000033);
  CHECK(squarefree_kernel(big * big) == 1);
}

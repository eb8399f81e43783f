#pragma once

#include <vector>

#include "loopmot/rational.hpp"

namespace loopmot {

struct Signature {
  int pos = 0;
  int neg = 0;
  int zero = 0;

  bool operator==(const Signature&) const = default;
};

// Inertia of a symmetric rational matrix, computed exactly by pivoted LDLT
// (Sylvester's law). When no nonzero diagonal pivot exists, a 2x2 hyperbolic
// block [[0,b],[b,0]] is eliminated, contributing (+1,-1). Pivot choice:
// largest |diagonal| first, ties broken by smallest index.
Signature signature(RatMatrix m);

int rank_symmetric(const RatMatrix& m);

bool is_positive_semidefinite(const RatMatrix& m);

// Determinant by fraction-free Bareiss elimination on the integer matrix
// obtained by clearing denominators row by row.
Rational determinant(const RatMatrix& m);

// Exact rank of an integer matrix (fraction-free elimination).
int rank_integer(std::vector<std::vector<Integer>> m);

// Rank-revealing LDLT of a positive semidefinite symmetric matrix.
// m[perm[i]][perm[j]] = sum_k lower[i][k] * pivot[k] * lower[j][k],
// with pivot[k] > 0 for k < rank and lower unit lower-triangular.
struct PsdFactorization {
  std::vector<int> perm;
  RatMatrix lower;
  RatVector pivots;
  int rank = 0;
};
PsdFactorization ldlt_psd(const RatMatrix& m);

// Squarefree kernel of a nonzero rational: for q = a/b in lowest terms,
// the squarefree part of a*b, sign carried. The result represents q modulo
// nonzero rational squares; 1 means q is a perfect square.
Integer squarefree_kernel(const Rational& q);

}  // namespace loopmot

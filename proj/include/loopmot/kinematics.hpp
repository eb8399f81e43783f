#pragma once

#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "loopmot/exactlin.hpp"
#include "loopmot/rational.hpp"

namespace loopmot {

// Exact kinematic invariants of an n-gon configuration: s[i][j] = p_i . p_j
// (0-based storage for edges 1..n) and squared masses m2[i].
struct KinematicPoint {
  int n = 0;
  RatMatrix s;
  RatVector m2;
};

// Index into the embedding-space vector family: edges 1..n plus the vector
// at infinity, which sorts after every edge.
using GramIndex = int;
inline constexpr GramIndex kInfinity = std::numeric_limits<int>::max();

using GramSubset = std::vector<GramIndex>;

struct GramData {
  GramSubset subset;
  RatMatrix matrix;
  Rational det;
};

struct GenericityReport {
  bool is_generic = false;
  int d = 0;
  // Subsets I (|I| <= d+1, I != {inf}) whose Gram determinant vanishes.
  std::vector<std::pair<GramSubset, Rational>> failures;
  bool rank_ok = false;
};

struct EuclideanReport {
  bool is_euclidean = false;
  bool psd = false;
  bool masses_positive = false;
  bool rank_ok = false;
  GenericityReport genericity;
};

struct RealizedMomenta {
  int d = 0;
  std::vector<std::vector<double>> vectors;
  double residual = 0.0;
};

// Validates symmetry, zero row sums (momentum conservation) and dimensions.
KinematicPoint from_invariants(int n, RatMatrix s, RatVector m2);

// Builds invariants from explicit rational momenta under the Euclidean dot
// product. Momenta must sum to zero exactly.
KinematicPoint from_momenta(int d, const std::vector<RatVector>& p, RatVector m2);

// p_{a,b}^2 = sum_{a<=k,l<=b} s_{kl}, the squared momentum entering between
// edges a and b. 1-based, a <= b.
Rational range_momentum_sq(const KinematicPoint& k, int a, int b);

// Gram matrix of the embedding vectors indexed by `subset`:
//   <u_i,u_i> = -2 m_i^2, <u_i,u_j> = -(m_i^2 + m_j^2 + p_{i+1,j}^2) for i<j,
//   <u_inf,u_i> = 1, <u_inf,u_inf> = 0.
GramData gram_matrix(const KinematicPoint& k, GramSubset subset);

Rational gram_det(const KinematicPoint& k, const GramSubset& subset);

// Checks that every Gram determinant of size <= d+1 (subset != {inf}) is
// nonzero and that rank(s) <= d.
GenericityReport is_generic(const KinematicPoint& k, int d);

// s positive semidefinite with rank <= d, all masses positive, and generic.
EuclideanReport is_euclidean(const KinematicPoint& k, int d);

// Floating-point momenta realizing the invariants in the span of the first
// rank(s) coordinates of R^d. Exact LDLT pivots, floating square roots.
RealizedMomenta realize_momenta(const KinematicPoint& k, int d, double tol = 1e-9);

// Kinematic map induced by pinching `pinched` edges: surviving edge a
// receives the summed momentum of the cyclic vertex range ending at it.
KinematicPoint merge_kinematics(const KinematicPoint& k, const std::set<int>& pinched);

}  // namespace loopmot

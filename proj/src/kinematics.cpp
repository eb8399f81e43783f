#include "loopmot/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loopmot/errors.hpp"

namespace loopmot {

namespace {

std::string subset_string(const GramSubset& subset) {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ",";
    out += subset[i] == kInfinity ? "inf" : std::to_string(subset[i]);
  }
  return out + "}";
}

void check_edge_index(const KinematicPoint& k, GramIndex i) {
  if (i == kInfinity) return;
  if (i < 1 || i > k.n) fail("IndexOutOfRange", "edge index " + std::to_string(i));
}

}  // namespace

KinematicPoint from_invariants(int n, RatMatrix s, RatVector m2) {
  if (n < 1) fail("DimensionMismatch", "n must be positive");
  if (static_cast<int>(s.size()) != n) fail("DimensionMismatch", "s is not n x n");
  for (const auto& row : s)
    if (static_cast<int>(row.size()) != n) fail("DimensionMismatch", "s is not n x n");
  if (static_cast<int>(m2.size()) != n) fail("DimensionMismatch", "m2 does not have length n");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s[i][j] != s[j][i]) fail("NotSymmetric", "s[" + std::to_string(i + 1) + "][" +
                                                       std::to_string(j + 1) + "] != transpose");
  for (int i = 0; i < n; ++i) {
    Rational sum = 0;
    for (int j = 0; j < n; ++j) sum += s[i][j];
    if (sum != 0) fail("RowSumNonzero", "row " + std::to_string(i + 1) + " sums to " +
                                            rational_string(sum));
  }
  return KinematicPoint{n, std::move(s), std::move(m2)};
}

KinematicPoint from_momenta(int d, const std::vector<RatVector>& p, RatVector m2) {
  const int n = static_cast<int>(p.size());
  if (n < 1) fail("DimensionMismatch", "need at least one momentum");
  for (const auto& v : p)
    if (static_cast<int>(v.size()) != d) fail("DimensionMismatch", "momentum has wrong dimension");
  for (int a = 0; a < d; ++a) {
    Rational sum = 0;
    for (const auto& v : p) sum += v[a];
    if (sum != 0) fail("MomentumNotConserved", "momenta sum to a nonzero vector");
  }
  RatMatrix s(n, RatVector(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational dot = 0;
      for (int a = 0; a < d; ++a) dot += p[i][a] * p[j][a];
      s[i][j] = dot;
      s[j][i] = dot;
    }
  return from_invariants(n, std::move(s), std::move(m2));
}

Rational range_momentum_sq(const KinematicPoint& k, int a, int b) {
  if (a < 1 || b > k.n || a > b) fail("IndexOutOfRange", "range " + std::to_string(a) + ".." +
                                                             std::to_string(b));
  Rational sum = 0;
  for (int i = a; i <= b; ++i)
    for (int j = a; j <= b; ++j) sum += k.s[i - 1][j - 1];
  return sum;
}

GramData gram_matrix(const KinematicPoint& k, GramSubset subset) {
  for (GramIndex i : subset) check_edge_index(k, i);
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      if (subset[a] == subset[b])
        fail("IndexOutOfRange", "duplicate index in Gram subset " + subset_string(subset));

  const std::size_t m = subset.size();
  RatMatrix g(m, RatVector(m, 0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const GramIndex ia = subset[a], ib = subset[b];
      Rational entry;
      if (ia == kInfinity && ib == kInfinity) {
        entry = 0;
      } else if (ia == kInfinity || ib == kInfinity) {
        entry = 1;
      } else if (ia == ib) {
        entry = -2 * k.m2[ia - 1];
      } else {
        const int lo = std::min(ia, ib), hi = std::max(ia, ib);
        entry = -(k.m2[lo - 1] + k.m2[hi - 1] + range_momentum_sq(k, lo + 1, hi));
      }
      g[a][b] = entry;
      g[b][a] = entry;
    }
  }
  Rational det = determinant(g);
  return GramData{std::move(subset), std::move(g), std::move(det)};
}

Rational gram_det(const KinematicPoint& k, const GramSubset& subset) {
  return gram_matrix(k, subset).det;
}

GenericityReport is_generic(const KinematicPoint& k, int d) {
  if (d < 2 || d % 2 != 0) fail("DimensionMismatch", "d must be a positive even integer >= 2");
  GenericityReport report;
  report.d = d;
  report.rank_ok = rank_symmetric(k.s) <= d;

  // Every subset of {1..n, inf} of size 1..d+1 except {inf} itself.
  const int count = k.n + 1;
  std::vector<GramIndex> universe(count);
  for (int i = 0; i < k.n; ++i) universe[i] = i + 1;
  universe[k.n] = kInfinity;
  for (unsigned long mask = 1; mask < (1ul << count); ++mask) {
    const int size = __builtin_popcountl(mask);
    if (size > d + 1) continue;
    if (mask == (1ul << k.n)) continue;  // {inf}
    GramSubset subset;
    for (int i = 0; i < count; ++i)
      if (mask & (1ul << i)) subset.push_back(universe[i]);
    Rational det = gram_det(k, subset);
    if (det == 0) report.failures.emplace_back(std::move(subset), std::move(det));
  }
  report.is_generic = report.failures.empty() && report.rank_ok;
  return report;
}

EuclideanReport is_euclidean(const KinematicPoint& k, int d) {
  EuclideanReport report;
  const Signature sig = signature(k.s);
  report.psd = sig.neg == 0;
  report.rank_ok = sig.pos + sig.neg <= d;
  report.masses_positive =
      std::all_of(k.m2.begin(), k.m2.end(), [](const Rational& q) { return q > 0; });
  report.genericity = is_generic(k, d);
  report.is_euclidean =
      report.psd && report.rank_ok && report.masses_positive && report.genericity.is_generic;
  return report;
}

RealizedMomenta realize_momenta(const KinematicPoint& k, int d, double tol) {
  const EuclideanReport eu = is_euclidean(k, d);
  if (!eu.is_euclidean) fail("NotEuclidean", "kinematics are not generic Euclidean in dimension " +
                                                 std::to_string(d));
  const PsdFactorization f = ldlt_psd(k.s);

  // Row i of L * sqrt(D), embedded in the first rank coordinates.
  std::vector<int> where(k.n);  // original index -> position in pivot order
  for (int t = 0; t < k.n; ++t) where[f.perm[t]] = t;
  std::vector<double> root(f.rank);
  for (int c = 0; c < f.rank; ++c) root[c] = std::sqrt(to_double(f.pivots[c]));

  RealizedMomenta out;
  out.d = d;
  out.vectors.assign(k.n, std::vector<double>(d, 0.0));
  for (int i = 0; i < k.n; ++i)
    for (int c = 0; c < f.rank; ++c)
      out.vectors[i][c] = to_double(f.lower[where[i]][c]) * root[c];

  double residual = 0.0;
  for (int i = 0; i < k.n; ++i)
    for (int j = 0; j < k.n; ++j) {
      double dot = 0.0;
      for (int a = 0; a < d; ++a) dot += out.vectors[i][a] * out.vectors[j][a];
      residual = std::max(residual, std::abs(dot - to_double(k.s[i][j])));
    }
  for (int a = 0; a < d; ++a) {
    double sum = 0.0;
    for (int i = 0; i < k.n; ++i) sum += out.vectors[i][a];
    residual = std::max(residual, std::abs(sum));
  }
  out.residual = residual;
  if (residual > tol)
    fail("ToleranceUnachievable", "realization residual " + std::to_string(residual));
  return out;
}

KinematicPoint merge_kinematics(const KinematicPoint& k, const std::set<int>& pinched) {
  for (int e : pinched)
    if (e < 1 || e > k.n) fail("IndexOutOfRange", "pinched edge " + std::to_string(e));
  if (static_cast<int>(pinched.size()) == k.n)
    fail("AllEdgesPinched", "cannot merge kinematics onto the point graph");

  std::vector<int> survivors;
  for (int e = 1; e <= k.n; ++e)
    if (!pinched.count(e)) survivors.push_back(e);
  const int m = static_cast<int>(survivors.size());

  // Vertex range feeding surviving edge a: (j_{a-1}, j_a], cyclic through n
  // for a = 1.
  std::vector<std::vector<int>> ranges(m);
  for (int a = 0; a < m; ++a) {
    const int prev = a == 0 ? survivors.back() : survivors[a - 1];
    int v = prev % k.n + 1;
    while (true) {
      ranges[a].push_back(v);
      if (v == survivors[a]) break;
      v = v % k.n + 1;
    }
  }

  RatMatrix s(m, RatVector(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Rational sum = 0;
      for (int u : ranges[a])
        for (int v : ranges[b]) sum += k.s[u - 1][v - 1];
      s[a][b] = sum;
    }
  RatVector m2(m);
  for (int a = 0; a < m; ++a) m2[a] = k.m2[survivors[a] - 1];
  return from_invariants(m, std::move(s), std::move(m2));
}

}  // namespace loopmot

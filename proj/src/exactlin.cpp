#include "loopmot/exactlin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "loopmot/errors.hpp"

namespace loopmot {

namespace {

void require_square_symmetric(const RatMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail("NotSymmetric", "matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m[i][j] != m[j][i]) fail("NotSymmetric", "matrix is not symmetric");
}

}  // namespace

Signature signature(RatMatrix m) {
  require_square_symmetric(m);
  Signature sig;
  std::vector<int> active(m.size());
  std::iota(active.begin(), active.end(), 0);

  while (!active.empty()) {
    // Diagonal pivot: largest absolute value, smallest index on ties.
    int pivot = -1;
    for (int i : active) {
      if (m[i][i] == 0) continue;
      if (pivot < 0 || abs(m[i][i]) > abs(m[pivot][pivot])) pivot = i;
    }

    if (pivot >= 0) {
      const Rational d = m[pivot][pivot];
      (sgn(d) > 0 ? sig.pos : sig.neg)++;
      active.erase(std::find(active.begin(), active.end(), pivot));
      for (int j : active)
        for (int k : active) m[j][k] -= m[j][pivot] * m[pivot][k] / d;
      continue;
    }

    // All active diagonal entries vanish; eliminate a hyperbolic 2x2 block
    // [[0,b],[b,0]], which contributes one positive and one negative axis.
    int bi = -1, bj = -1;
    for (std::size_t a = 0; a < active.size() && bi < 0; ++a)
      for (std::size_t b = a + 1; b < active.size(); ++b)
        if (m[active[a]][active[b]] != 0) {
          bi = active[a];
          bj = active[b];
          break;
        }
    if (bi < 0) {
      sig.zero += static_cast<int>(active.size());
      break;
    }
    const Rational b = m[bi][bj];
    sig.pos++;
    sig.neg++;
    active.erase(std::find(active.begin(), active.end(), bi));
    active.erase(std::find(active.begin(), active.end(), bj));
    for (int k : active)
      for (int l : active) m[k][l] -= (m[k][bi] * m[bj][l] + m[k][bj] * m[bi][l]) / b;
  }
  return sig;
}

int rank_symmetric(const RatMatrix& m) {
  const Signature sig = signature(m);
  return sig.pos + sig.neg;
}

bool is_positive_semidefinite(const RatMatrix& m) { return signature(m).neg == 0; }

Rational determinant(const RatMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail("DimensionMismatch", "determinant of a non-square matrix");
  if (n == 0) return 1;

  // Clear denominators row by row, then run fraction-free Bareiss.
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (const auto& q : m[i]) l = lcm(l, q.get_den());
    for (std::size_t j = 0; j < n; ++j) {
      Rational scaled = m[i][j] * l;
      a[i][j] = scaled.get_num();
    }
    scale *= l;
  }

  int det_sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      det_sign = -det_sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  Rational det(det_sign * a[n - 1][n - 1], scale);
  det.canonicalize();
  return det;
}

int rank_integer(std::vector<std::vector<Integer>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

PsdFactorization ldlt_psd(const RatMatrix& m) {
  require_square_symmetric(m);
  const int n = static_cast<int>(m.size());
  RatMatrix a = m;
  PsdFactorization f;
  f.lower.assign(n, RatVector(n, 0));
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);

  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int i : remaining)
      if (best < 0 || a[i][i] > a[best][best]) best = i;
    if (a[best][best] < 0) fail("NotPositiveSemidefinite", "negative pivot in LDLT");
    if (a[best][best] == 0) {
      // PSD with zero diagonal forces the whole remaining block to vanish.
      for (int i : remaining)
        for (int j : remaining)
          if (a[i][j] != 0) fail("NotPositiveSemidefinite", "zero pivot with nonzero residue");
      for (int i : remaining) f.perm.push_back(i);
      break;
    }
    f.perm.push_back(best);
    f.pivots.push_back(a[best][best]);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    const Rational d = a[best][best];
    for (int i : remaining) {
      const Rational lik = a[i][best] / d;
      a[i][best] = lik;  // keep the multiplier for later reads
    }
    for (int i : remaining)
      for (int j : remaining) a[i][j] -= a[i][best] * d * a[j][best];
    f.rank = step + 1;
  }

  // Re-express multipliers in pivot order.
  for (int t = 0; t < n; ++t) {
    f.lower[t][t] = 1;
    for (int k = 0; k < std::min(t, f.rank); ++k) f.lower[t][k] = a[f.perm[t]][f.perm[k]];
  }
  return f;
}

namespace {

constexpr unsigned long kTrialBound = 100000;

Integer mulmod(const Integer& x, const Integer& y, const Integer& n) {
  Integer r = x * y;
  return r % n;
}

// Brent's cycle variant of Pollard rho; n must be odd, composite, > 1.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1, saved = 2;
    unsigned long power = 1, lam = 0;
    while (d == 1) {
      if (lam == power) {
        saved = x;
        power *= 2;
        lam = 0;
      }
      x = (mulmod(x, x, n) + c) % n;
      ++lam;
      Integer diff = x - saved;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;  // cycle without factor, retry with next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(Integer x, std::map<Integer, long>& out, long mult) {
  if (x == 1) return;
  if (mpz_probab_prime_p(x.get_mpz_t(), 40)) {
    out[x] += mult;
    return;
  }
  // Perfect power: replace x = r^k by r with multiplicity k*mult.
  if (mpz_perfect_power_p(x.get_mpz_t())) {
    for (unsigned long k = 2; k <= mpz_sizeinbase(x.get_mpz_t(), 2); ++k) {
      Integer root;
      if (mpz_root(root.get_mpz_t(), x.get_mpz_t(), k) != 0) {
        factor_into(root, out, mult * static_cast<long>(k));
        return;
      }
    }
  }
  Integer d = pollard_brent(x);
  factor_into(d, out, mult);
  factor_into(x / d, out, mult);
}

std::map<Integer, long> factor(Integer x) {
  std::map<Integer, long> out;
  for (unsigned long p = 2; p <= kTrialBound && x > 1; p += (p == 2 ? 1 : 2)) {
    if (!mpz_divisible_ui_p(x.get_mpz_t(), p)) continue;
    long e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
      mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
      ++e;
    }
    out[Integer(p)] = e;
  }
  if (x > 1) factor_into(x, out, 1);
  return out;
}

}  // namespace

Integer squarefree_kernel(const Rational& q) {
  if (q == 0) fail("GramVanishes", "squarefree kernel of zero");
  Integer n = abs(q.get_num() * q.get_den());
  Integer result = sgn(q) > 0 ? 1 : -1;
  for (const auto& [p, e] : factor(n))
    if (e % 2 != 0) result *= p;
  return result;
}

}  // namespace loopmot

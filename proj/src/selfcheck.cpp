#include "loopmot/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "loopmot/coaction.hpp"
#include "loopmot/errors.hpp"
#include "loopmot/graphs.hpp"
#include "loopmot/integrate.hpp"
#include "loopmot/motive.hpp"

namespace loopmot::selfcheck {

namespace {

Rational coordinate_pairing(const RatVector& u, const RatVector& v) {
  const std::size_t d = u.size() - 2;
  Rational dot = 0;
  for (std::size_t a = 0; a < d; ++a) dot += u[a] * v[a];
  return 2 * dot - (u[d] * v[d + 1] + u[d + 1] * v[d]);
}

RatVector embedding_vector(const std::vector<RatVector>& p, const RatVector& m2, GramIndex index) {
  const std::size_t d = p.empty() ? 0 : p[0].size();
  RatVector u(d + 2, 0);
  if (index == kInfinity) {
    // (0, 1, 0): the sign that pairs to <u_inf, u_i> = +1 under the
    // coordinate form; the opposite sign flips a row and column at once and
    // leaves every Gram determinant unchanged.
    u[d] = 1;
    return u;
  }
  RatVector partial(d, 0);
  for (int l = 1; l <= index; ++l)
    for (std::size_t a = 0; a < d; ++a) partial[a] += p[l - 1][a];
  Rational norm = 0;
  for (std::size_t a = 0; a < d; ++a) norm += partial[a] * partial[a];
  for (std::size_t a = 0; a < d; ++a) u[a] = partial[a];
  u[d] = -(norm + m2[index - 1]);
  u[d + 1] = -1;
  return u;
}

}  // namespace

RatMatrix gram_from_momentum_vectors(const std::vector<RatVector>& p, const RatVector& m2,
                                     const GramSubset& subset) {
  std::vector<RatVector> u;
  for (GramIndex i : subset) u.push_back(embedding_vector(p, m2, i));
  const std::size_t m = subset.size();
  RatMatrix g(m, RatVector(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g[a][b] = coordinate_pairing(u[a], u[b]);
  return g;
}

RandomConfig random_momenta(std::mt19937_64& rng, int n, int d) {
  std::uniform_int_distribution<int> den_dist(1, 3);
  auto draw = [&](int lo_num, int hi_num, int den) {
    std::uniform_int_distribution<int> num_dist(lo_num, hi_num);
    return rat(num_dist(rng), den);
  };

  RandomConfig cfg;
  cfg.n = n;
  cfg.d = d;
  cfg.p.assign(n, RatVector(d, 0));
  for (int i = 0; i + 1 < n; ++i)
    for (int a = 0; a < d; ++a) {
      const int den = den_dist(rng);
      cfg.p[i][a] = draw(-5 * den, 5 * den, den);
    }
  for (int a = 0; a < d; ++a) {
    Rational sum = 0;
    for (int i = 0; i + 1 < n; ++i) sum += cfg.p[i][a];
    cfg.p[n - 1][a] = -sum;
  }
  for (int i = 0; i < n; ++i) {
    const int den = den_dist(rng);
    cfg.m2.push_back(draw(1, 5 * den, den));
  }
  return cfg;
}

RandomConfig random_generic_euclidean(std::mt19937_64& rng, int n, int d) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RandomConfig cfg = random_momenta(rng, n, d);
    const KinematicPoint k = from_momenta(d, cfg.p, cfg.m2);
    if (is_euclidean(k, d).is_euclidean) return cfg;
  }
  fail("NotGeneric", "could not draw a generic Euclidean configuration");
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

CheckResult finish(const std::string& name, bool pass, const std::string& detail,
                   const Timer& timer) {
  return CheckResult{name, pass, detail, timer.seconds()};
}

}  // namespace

CheckResult run_gram_oracle(const Options& opt, int n_configs) {
  Timer timer;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> n_dist(2, 6), d_dist(1, 2);
  for (int c = 0; c < n_configs; ++c) {
    const int n = n_dist(rng), d = 2 * d_dist(rng);
    const RandomConfig cfg = random_momenta(rng, n, d);
    const KinematicPoint k = from_momenta(d, cfg.p, cfg.m2);
    GramSubset full;
    for (int i = 1; i <= n; ++i) full.push_back(i);
    full.push_back(kInfinity);
    const RatMatrix expected = gram_from_momentum_vectors(cfg.p, cfg.m2, full);
    const GramData got = gram_matrix(k, full);
    if (got.matrix != expected)
      return finish("gram-coordinate-oracle", false,
                    "mismatch at config " + std::to_string(c) + " (n=" + std::to_string(n) +
                        ", d=" + std::to_string(d) + ")",
                    timer);
  }
  return finish("gram-coordinate-oracle", true, std::to_string(n_configs) + " configs", timer);
}

CheckResult run_rank_identities(const Options& opt) {
  Timer timer;
  for (int n = 2; n <= opt.n_max; ++n) {
    const CutQuotientGraph g = n_gon(n);
    const int reduced = weight_pieces(g, Variant::Reduced).rank;
    const int full = weight_pieces(g, Variant::Full).rank;
    const int quotient = weight_pieces(g, Variant::Quotient).rank;
    const long long basis = static_cast<long long>(de_rham_basis(g, Variant::Full, 1).size());
    const bool ok = reduced == (1 << (n - 1)) && full == (1 << n) - 1 &&
                    full == reduced + quotient && basis == full;
    if (!ok)
      return finish("rank-identities", false, "failed at n=" + std::to_string(n), timer);
  }
  return finish("rank-identities", true, "n = 2.." + std::to_string(opt.n_max), timer);
}

CheckResult run_spectral_oracle(const Options& opt) {
  Timer timer;
  auto binom = [](int a, int b) {
    if (b < 0 || b > a) return 0ll;
    long long r = 1;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  for (int n = 1; n <= opt.n_max; ++n) {
    const auto ranks = plus_part_cohomology_ranks(n, 8);
    for (int k = 0; k <= 8; ++k)
      if (ranks[k] != binom(n - 1, k))
        return finish("spectral-sequence-oracle", false,
                      "plus part n=" + std::to_string(n) + " k=" + std::to_string(k), timer);
  }
  for (int n = 1; n <= opt.n_max; ++n) {
    for (Variant variant : {Variant::Reduced, Variant::Quotient}) {
      std::map<int, long long> enumerated;
      for (const auto& piece : weight_pieces(n_gon(n), variant).pieces)
        enumerated[piece.weight] += piece.multiplicity;
      if (enumerated != minus_part_gr_ranks(n, variant))
        return finish("spectral-sequence-oracle", false,
                      "minus part n=" + std::to_string(n) + " " + variant_name(variant), timer);
    }
  }
  return finish("spectral-sequence-oracle", true, "n = 1.." + std::to_string(opt.n_max), timer);
}

CheckResult run_coassociativity(const Options& opt) {
  Timer timer;
  for (int n = 2; n <= opt.n_max; ++n) {
    const CoassociativityResult r = check_coassociativity(n);
    if (!r.ok)
      return finish("coassociativity", false, "n=" + std::to_string(n) + ": " + r.counterexample,
                    timer);
  }
  return finish("coassociativity", true, "n = 2.." + std::to_string(opt.n_max), timer);
}

CheckResult run_residue_signs(const Options& opt) {
  Timer timer;
  const bool mutate = opt.mutate == "residue-sign";
  // Anticommutation fixes the sign of a transposition to -1; the mutation
  // hook corrupts that expectation to prove the suite can fail.
  const int expected_transposition = mutate ? 1 : -1;
  if (residue_sign({1, 3, 4}) != 1)
    return finish("residue-signs", false, "sorted order must be +1", timer);
  if (residue_sign({3, 1}) != expected_transposition)
    return finish("residue-signs", false, "transposition sign mismatch", timer);
  if (residue_sign({2, 1, 3}) != -1)
    return finish("residue-signs", false, "odd permutation must be -1", timer);

  std::mt19937_64 rng(opt.seed);
  std::vector<int> edges{1, 2, 3, 4, 5};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> sigma = edges, tau = edges;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::shuffle(tau.begin(), tau.end(), rng);
    // Composition through positions: (sigma o tau)(i) = sigma[tau[i]-1].
    std::vector<int> composed(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) composed[i] = sigma[tau[i] - 1];
    if (residue_sign(composed) != residue_sign(sigma) * residue_sign(tau))
      return finish("residue-signs", false, "sign is not multiplicative", timer);
  }
  return finish("residue-signs", true, "anticommutation and multiplicativity", timer);
}

CheckResult run_integrator_identities(const Options&) {
  Timer timer;
  for (int d : {2, 4}) {
    for (const Rational& m2 : {rat(1), rat(4), rat(25, 4)}) {
      IntegralSpec spec;
      spec.graph = n_gon(1);
      spec.d = d;
      spec.nu = {d};
      spec.kinematics = from_invariants(1, {{rat(0)}}, {m2});
      spec.tol = 1e-6;
      const double expected = std::pow(to_double(m2), -0.5 * d);
      const double got = integrate(spec).value;
      if (std::abs(got - expected) > 1e-6 * expected)
        return finish("integrator-identities", false,
                      "tadpole d=" + std::to_string(d) + " m2=" + rational_string(m2), timer);
    }
  }

  IntegralSpec bubble;
  bubble.graph = n_gon(2);
  bubble.d = 2;
  bubble.nu = {1, 1};
  bubble.kinematics =
      from_invariants(2, {{rat(1), rat(-1)}, {rat(-1), rat(1)}}, {rat(1), rat(1)});
  bubble.tol = 1e-7;
  const HomogeneityCheck h = check_homogeneity(bubble, rat(4));
  if (h.rel_error > 1e-5)
    return finish("integrator-identities", false, "homogeneity violated", timer);
  return finish("integrator-identities", true, "tadpole values and homogeneity", timer);
}

std::vector<CheckResult> run_all(const Options& opt) {
  if (!opt.mutate.empty() && opt.mutate != "residue-sign")
    fail("BadMutation", "unknown mutation '" + opt.mutate + "'");
  return {run_gram_oracle(opt),    run_rank_identities(opt), run_spectral_oracle(opt),
          run_coassociativity(opt), run_residue_signs(opt),   run_integrator_identities(opt)};
}

}  // namespace loopmot::selfcheck

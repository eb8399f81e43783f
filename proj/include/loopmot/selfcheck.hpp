#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "loopmot/kinematics.hpp"

namespace loopmot::selfcheck {

// Independent oracle for the Gram entries: builds the embedding vectors
//   u_i = (p_{1,i}, -(p_{1,i}^2 + m_i^2), -1), u_inf = (0,-1,0)
// from explicit rational momenta and pairs them with the coordinate form
//   <(K,K+,K-),(K',K'+,K'-)> = 2 K.K' - (K+ K'- + K- K'+).
// Never calls gram_matrix; the two routes are compared entry-wise.
RatMatrix gram_from_momentum_vectors(const std::vector<RatVector>& p, const RatVector& m2,
                                     const GramSubset& subset);

struct RandomConfig {
  int n = 0;
  int d = 0;
  std::vector<RatVector> p;  // momenta summing to zero
  RatVector m2;              // positive masses
};

// Rational momenta with entries in [-5,5] (denominators 1..3); the last
// momentum balances the sum. Masses are positive.
RandomConfig random_momenta(std::mt19937_64& rng, int n, int d);

// Draws random Euclidean configurations until one is generic in dimension d.
RandomConfig random_generic_euclidean(std::mt19937_64& rng, int n, int d);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  int n_max = 6;        // upper n for the combinatorial suites
  std::string mutate;   // "residue-sign" corrupts that suite on purpose
  std::uint64_t seed = 20240915;
};

CheckResult run_gram_oracle(const Options& opt, int n_configs = 100);
CheckResult run_rank_identities(const Options& opt);
CheckResult run_spectral_oracle(const Options& opt);
CheckResult run_coassociativity(const Options& opt);
CheckResult run_residue_signs(const Options& opt);
CheckResult run_integrator_identities(const Options& opt);

std::vector<CheckResult> run_all(const Options& opt);

}  // namespace loopmot::selfcheck

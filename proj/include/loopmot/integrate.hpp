#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "loopmot/graphs.hpp"
#include "loopmot/kinematics.hpp"

namespace loopmot {

enum class Method { AdaptiveQuadrature, QuasiMonteCarlo };

enum class Execution { Serial, OpenMp };

struct IntegralSpec {
  CutQuotientGraph graph;  // cuts must be empty; pinched edges drop out
  int d = 2;
  std::vector<int> nu;  // one exponent per surviving edge, ascending order
  KinematicPoint kinematics;
  Method method = Method::AdaptiveQuadrature;
  double tol = 1e-6;
  std::uint64_t seed = 1;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long n_evaluations = 0;
  Method method = Method::AdaptiveQuadrature;
  bool tolerance_reached = true;
};

// The positive smooth function k -> 1 / prod_i ((k + p_{1,i})^2 + m_i^2)^nu_i
// on R^d, with momenta realized from the exact invariants. Propagators of
// pinched edges are absent (exponent zero).
class Integrand {
 public:
  static Integrand build(const IntegralSpec& spec);

  double operator()(const double* k) const;
  int dim() const { return d_; }
  // Characteristic momentum scale; the compactification maps each
  // coordinate through k = scale * tan(theta).
  double scale() const { return scale_; }

 private:
  int d_ = 0;
  double scale_ = 1.0;
  std::vector<double> shifts_;  // p_{1,i} per surviving edge, d_ entries each
  std::vector<double> m2_;
  std::vector<int> nu_;
};

// Batched evaluation kernels. points holds n contiguous d-vectors. The
// OpenMP variant produces bit-identical output to the serial one.
void eval_batch_serial(const Integrand& f, const double* points, double* out, std::size_t n);
void eval_batch_omp(const Integrand& f, const double* points, double* out, std::size_t n);

// I(Gamma,nu,d,K) = (1/pi^{d/2}) * integral of the integrand, evaluated on
// the tan-compactified box by the selected backend.
IntegralResult integrate(const IntegralSpec& spec, Execution exec = Execution::OpenMp);

struct HomogeneityCheck {
  double lhs = 0.0;  // I(lambda s, lambda m^2)
  double rhs = 0.0;  // lambda^{d/2 - nu} I(s, m^2)
  double rel_error = 0.0;
};

// I(lambda s, lambda m^2) = lambda^{d/2-nu} I(s, m^2), exact analytically.
HomogeneityCheck check_homogeneity(const IntegralSpec& spec, const Rational& lambda);

// Integrates the quotient graph two ways (parent integrand with pinched
// exponents zero vs. reduced k-gon at merged kinematics) and returns the
// relative difference.
double check_quotient_consistency(const KinematicPoint& k, const std::set<int>& pinched, int d,
                                  const std::vector<int>& nu_survivors,
                                  Method method = Method::AdaptiveQuadrature, double tol = 1e-6,
                                  std::uint64_t seed = 1);

}  // namespace loopmot

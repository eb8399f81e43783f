#include <doctest.h>

#include <cmath>
#include <functional>

#include "loopmot/errors.hpp"
#include "loopmot/integrate.hpp"

using namespace loopmot;

namespace {

KinematicPoint e1() {
  return from_invariants(2, {{rat(1), rat(-1)}, {rat(-1), rat(1)}}, {rat(1), rat(1)});
}

KinematicPoint tadpole_point(Rational m2 = rat(1)) {
  return from_invariants(1, {{rat(0)}}, {std::move(m2)});
}

KinematicPoint equilateral() {
  return from_invariants(
      3, {{rat(2), rat(-1), rat(-1)}, {rat(-1), rat(2), rat(-1)}, {rat(-1), rat(-1), rat(2)}},
      {rat(1), rat(1), rat(1)});
}

IntegralSpec tadpole_spec(int d, Rational m2 = rat(1)) {
  IntegralSpec spec;
  spec.graph = n_gon(1);
  spec.d = d;
  spec.nu = {d};
  spec.kinematics = tadpole_point(std::move(m2));
  spec.tol = 1e-7;
  return spec;
}

IntegralSpec bubble_spec(Method method = Method::AdaptiveQuadrature) {
  IntegralSpec spec;
  spec.graph = n_gon(2);
  spec.d = 2;
  spec.nu = {1, 1};
  spec.kinematics = e1();
  spec.method = method;
  spec.tol = method == Method::AdaptiveQuadrature ? 1e-7 : 1e-4;
  spec.seed = 11;
  return spec;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("integrand pointwise values") {
  const Integrand tad = Integrand::build(tadpole_spec(2));
  const double origin2[2] = {0.0, 0.0};
  CHECK(tad(origin2) == doctest::Approx(1.0).epsilon(1e-14));  // 1/(0+1)^2

  const Integrand bub = Integrand::build(bubble_spec());
  CHECK(bub(origin2) == doctest::Approx(0.5).epsilon(1e-12));
  const double shifted[2] = {-1.0, 0.0};
  CHECK(bub(shifted) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integrand rejects bad specs") {
  IntegralSpec divergent = bubble_spec();
  divergent.nu = {1, 0};  // nu = 1 = d/2, boundary of convergence
  CHECK(code_of([&] { Integrand::build(divergent); }) == "Divergent");

  IntegralSpec negative = bubble_spec();
  negative.nu = {3, -1};
  CHECK(code_of([&] { Integrand::build(negative); }) == "Divergent");

  IntegralSpec wrong_count = bubble_spec();
  wrong_count.nu = {1};
  CHECK(code_of([&] { Integrand::build(wrong_count); }) == "DimensionMismatch");

  IntegralSpec not_euclidean = bubble_spec();
  not_euclidean.kinematics =
      from_invariants(2, {{rat(1), rat(-1)}, {rat(-1), rat(1)}}, {rat(-1), rat(1)});
  CHECK(code_of([&] { Integrand::build(not_euclidean); }) == "NotEuclidean");

  IntegralSpec with_cut = bubble_spec();
  with_cut.graph = cut(n_gon(2), 1);
  CHECK(code_of([&] { Integrand::build(with_cut); }) == "BadSpec");
}

TEST_CASE("single-propagator integrals hit the exact closed value") {
  // The full d in {2,4} x m^2 grid runs in the acceptance suite; here the
  // three d = 2 masses plus one d = 4 spot check.
  for (Rational m2 : {rat(1), rat(4), rat(25, 4)}) {
    const double expected = 1.0 / to_double(m2);
    const IntegralResult r = integrate(tadpole_spec(2, m2));
    CHECK(std::abs(r.value - expected) <= 1e-6 * expected);
    CHECK(r.tolerance_reached);
    CHECK(r.error_estimate >= 0.0);
  }
  const IntegralResult four = integrate(tadpole_spec(4, rat(25, 4)));
  CHECK(std::abs(four.value - 0.0256) <= 1e-6 * 0.0256);
}

// Independent oracle: Feynman parametrization collapses the d = 2 equal-mass
// bubble to int_0^1 dx / (m^2 + x(1-x) p^2), which has an elementary closed
// form through the roots of x^2 - x - m^2/p^2.
TEST_CASE("bubble agrees with the parametric closed form") {
  auto closed_form = [](double m2) {
    const double s = std::sqrt(1.0 + 4.0 * m2);
    const double xp = 0.5 * (1 + s), xm = 0.5 * (1 - s);
    return (1.0 / s) * (std::log((1.0 - xm) / (xp - 1.0)) - std::log(-xm / xp));
  };

  IntegralSpec spec = bubble_spec();
  spec.tol = 1e-9;
  CHECK(integrate(spec).value == doctest::Approx(closed_form(1.0)).epsilon(1e-9));

  // Sharp peak: masses far below the momentum scale.
  spec.kinematics =
      from_invariants(2, {{rat(1), rat(-1)}, {rat(-1), rat(1)}}, {rat(1, 100), rat(1, 100)});
  spec.tol = 1e-8;
  CHECK(integrate(spec).value == doctest::Approx(closed_form(0.01)).epsilon(1e-7));
}

TEST_CASE("homogeneity") {
  const HomogeneityCheck bubble = check_homogeneity(bubble_spec(), rat(4));
  CHECK(bubble.rel_error <= 1e-5);
  CHECK(bubble.rhs == doctest::Approx(0.25 * integrate(bubble_spec()).value).epsilon(1e-12));

  // I(9 m^2) = 9^{1-2} I(m^2) for the d=2 tadpole.
  const HomogeneityCheck tad = check_homogeneity(tadpole_spec(2), rat(9));
  CHECK(tad.lhs == doctest::Approx(1.0 / 9.0).epsilon(1e-6));
  CHECK(tad.rel_error <= 1e-6);

  const HomogeneityCheck unit = check_homogeneity(bubble_spec(), rat(1));
  CHECK(unit.rel_error == 0.0);
}

TEST_CASE("quotient consistency") {
  CHECK(check_quotient_consistency(equilateral(), {2}, 2, {1, 1}) <= 1e-4);
  CHECK(check_quotient_consistency(equilateral(), {}, 2, {1, 1, 1}) == 0.0);

  // Pinching one bubble edge leaves a single propagator: both paths must
  // give m_2^{-2} = 1.
  CHECK(check_quotient_consistency(e1(), {1}, 2, {2}) <= 1e-8);
  IntegralSpec survivor;
  survivor.graph = pinch(n_gon(2), 1);
  survivor.d = 2;
  survivor.nu = {2};
  survivor.kinematics = e1();
  survivor.tol = 1e-7;
  CHECK(integrate(survivor).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("backends agree") {
  const IntegralResult quad = integrate(bubble_spec(Method::AdaptiveQuadrature));
  const IntegralResult qmc = integrate(bubble_spec(Method::QuasiMonteCarlo));
  const double tol =
      std::max(1e-4 * std::abs(quad.value), 3 * (quad.error_estimate + qmc.error_estimate));
  CHECK(std::abs(quad.value - qmc.value) <= tol);

  IntegralSpec tri;
  tri.graph = n_gon(3);
  tri.d = 2;
  tri.nu = {1, 1, 1};
  tri.kinematics = equilateral();
  tri.tol = 1e-7;
  const IntegralResult tri_quad = integrate(tri);
  tri.method = Method::QuasiMonteCarlo;
  tri.tol = 1e-4;
  const IntegralResult tri_qmc = integrate(tri);
  CHECK(std::abs(tri_quad.value - tri_qmc.value) <=
        std::max(1e-4 * std::abs(tri_quad.value),
                 3 * (tri_quad.error_estimate + tri_qmc.error_estimate)));

  IntegralSpec box;
  box.graph = n_gon(4);
  box.d = 2;
  box.nu = {1, 1, 1, 1};
  box.kinematics = from_momenta(
      2, {{rat(1), rat(0)}, {rat(0), rat(1)}, {rat(-1), rat(0)}, {rat(0), rat(-1)}},
      {rat(1), rat(1), rat(1), rat(1)});
  box.tol = 1e-7;
  const IntegralResult box_quad = integrate(box);
  box.method = Method::QuasiMonteCarlo;
  box.tol = 1e-4;
  const IntegralResult box_qmc = integrate(box);
  CHECK(std::abs(box_quad.value - box_qmc.value) <=
        std::max(1e-4 * std::abs(box_quad.value),
                 3 * (box_quad.error_estimate + box_qmc.error_estimate)));
}

TEST_CASE("qmc is deterministic per seed") {
  const IntegralResult a = integrate(bubble_spec(Method::QuasiMonteCarlo));
  const IntegralResult b = integrate(bubble_spec(Method::QuasiMonteCarlo));
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.n_evaluations == b.n_evaluations);

  IntegralSpec other = bubble_spec(Method::QuasiMonteCarlo);
  other.seed = 12;
  CHECK(integrate(other).value != a.value);
}

TEST_CASE("serial and openmp kernels are bit-identical") {
  const IntegralSpec qmc = bubble_spec(Method::QuasiMonteCarlo);
  CHECK(integrate(qmc, Execution::Serial).value == integrate(qmc, Execution::OpenMp).value);

  const IntegralSpec quad = bubble_spec(Method::AdaptiveQuadrature);
  const IntegralResult qs = integrate(quad, Execution::Serial);
  const IntegralResult qp = integrate(quad, Execution::OpenMp);
  CHECK(qs.value == qp.value);
  CHECK(qs.error_estimate == qp.error_estimate);
  CHECK(qs.n_evaluations == qp.n_evaluations);

  const Integrand f = Integrand::build(quad);
  std::vector<double> pts;
  for (int i = 0; i < 1000; ++i) pts.push_back(0.01 * i - 5.0);
  const std::size_t n = pts.size() / 2;
  std::vector<double> serial(n), omp(n);
  eval_batch_serial(f, pts.data(), serial.data(), n);
  eval_batch_omp(f, pts.data(), omp.data(), n);
  CHECK(serial == omp);
}

TEST_CASE("positivity and mass monotonicity") {
  const double light = integrate(bubble_spec()).value;
  CHECK(light > 0.0);

  IntegralSpec heavy = bubble_spec();
  heavy.kinematics.m2[0] = rat(2);
  const double heavier = integrate(heavy).value;
  CHECK(heavier > 0.0);
  CHECK(heavier < light);
}

TEST_CASE("unreachable tolerance is flagged") {
  IntegralSpec spec = bubble_spec(Method::QuasiMonteCarlo);
  spec.tol = 1e-13;
  const IntegralResult r = integrate(spec);
  CHECK_FALSE(r.tolerance_reached);
  CHECK(std::isfinite(r.value));
}

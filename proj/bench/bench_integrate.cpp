// Compares the serial reference integrator kernels against the OpenMP ones
// on a triangle spec: batched integrand evaluation and full QMC runs.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "loopmot/integrate.hpp"

using namespace loopmot;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

IntegralSpec triangle_spec() {
  IntegralSpec spec;
  spec.graph = n_gon(3);
  spec.d = 2;
  spec.nu = {1, 1, 1};
  spec.kinematics = from_invariants(
      3,
      {{rat(2), rat(-1), rat(-1)}, {rat(-1), rat(2), rat(-1)}, {rat(-1), rat(-1), rat(2)}},
      {rat(1), rat(1), rat(1)});
  spec.method = Method::QuasiMonteCarlo;
  spec.tol = 1e-5;
  spec.seed = 7;
  return spec;
}

}  // namespace

int main() {
  const IntegralSpec spec = triangle_spec();
  const Integrand f = Integrand::build(spec);

  // Batched evaluation kernel.
  constexpr std::size_t kPoints = 1u << 21;
  std::vector<double> pts(kPoints * 2);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (double& x : pts) x = u(rng);
  std::vector<double> out_serial(kPoints), out_omp(kPoints);

  auto t0 = std::chrono::steady_clock::now();
  eval_batch_serial(f, pts.data(), out_serial.data(), kPoints);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  eval_batch_omp(f, pts.data(), out_omp.data(), kPoints);
  const double t_omp = seconds_since(t0);

  bool identical = true;
  for (std::size_t i = 0; i < kPoints; ++i) identical = identical && out_serial[i] == out_omp[i];

  std::printf("eval_batch  %zu points: serial %.3fs, openmp %.3fs, speedup %.2fx, identical %s\n",
              kPoints, t_serial, t_omp, t_serial / t_omp, identical ? "yes" : "NO");

  // Full QMC integration, serial vs OpenMP.
  t0 = std::chrono::steady_clock::now();
  const IntegralResult serial = integrate(spec, Execution::Serial);
  const double q_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const IntegralResult parallel = integrate(spec, Execution::OpenMp);
  const double q_omp = seconds_since(t0);

  std::printf("qmc         serial %.3fs, openmp %.3fs, speedup %.2fx, identical %s (value %.10g)\n",
              q_serial, q_omp, q_serial / q_omp,
              serial.value == parallel.value ? "yes" : "NO", parallel.value);
  return 0;
}

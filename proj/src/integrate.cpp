#include "loopmot/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <random>

#include "loopmot/errors.hpp"

namespace loopmot {

namespace {

double pow_int(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Integrand Integrand::build(const IntegralSpec& spec) {
  if (!spec.graph.cuts.empty()) fail("BadSpec", "integral specs take graphs without cuts");
  if (spec.graph.is_point()) fail("BadSpec", "cannot integrate the point graph");
  if (spec.d < 2 || spec.d % 2 != 0) fail("DimensionMismatch", "d must be even and >= 2");
  const std::vector<int> survivors = spec.graph.edges();
  if (survivors.size() != spec.nu.size())
    fail("DimensionMismatch", "need one exponent per surviving edge");
  long nu_total = 0;
  for (int e : spec.nu) {
    if (e < 0) fail("Divergent", "negative propagator exponents are not supported");
    nu_total += e;
  }
  if (2 * nu_total <= spec.d)
    fail("Divergent", "sum of exponents must exceed d/2 for convergence");
  if (spec.kinematics.n != spec.graph.n)
    fail("DimensionMismatch", "kinematics and graph disagree on n");

  const RealizedMomenta mom = realize_momenta(spec.kinematics, spec.d);

  Integrand f;
  f.d_ = spec.d;
  for (std::size_t a = 0; a < survivors.size(); ++a) {
    if (spec.nu[a] == 0) continue;
    // p_{1,i}: partial sum of the parent momenta up to the surviving edge.
    std::vector<double> shift(spec.d, 0.0);
    for (int l = 1; l <= survivors[a]; ++l)
      for (int c = 0; c < spec.d; ++c) shift[c] += mom.vectors[l - 1][c];
    f.shifts_.insert(f.shifts_.end(), shift.begin(), shift.end());
    f.m2_.push_back(to_double(spec.kinematics.m2[survivors[a] - 1]));
    f.nu_.push_back(spec.nu[a]);
  }

  double scale_sq = 0.0;
  for (std::size_t e = 0; e < f.m2_.size(); ++e) {
    double shift_sq = 0.0;
    for (int c = 0; c < spec.d; ++c) shift_sq += f.shifts_[e * spec.d + c] * f.shifts_[e * spec.d + c];
    scale_sq += f.m2_[e] + shift_sq;
  }
  f.scale_ = std::sqrt(scale_sq / static_cast<double>(f.m2_.size()));
  return f;
}

double Integrand::operator()(const double* k) const {
  double denom = 1.0;
  for (std::size_t e = 0; e < m2_.size(); ++e) {
    double q = 0.0;
    const double* shift = shifts_.data() + e * d_;
    for (int c = 0; c < d_; ++c) {
      const double x = k[c] + shift[c];
      q += x * x;
    }
    denom *= pow_int(q + m2_[e], nu_[e]);
  }
  return 1.0 / denom;
}

void eval_batch_serial(const Integrand& f, const double* points, double* out, std::size_t n) {
  const int d = f.dim();
  for (std::size_t i = 0; i < n; ++i) out[i] = f(points + i * d);
}

void eval_batch_omp(const Integrand& f, const double* points, double* out, std::size_t n) {
  const int d = f.dim();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) out[i] = f(points + i * d);
}

namespace {

// ---------------------------------------------------------------------------
// Quasi-Monte Carlo backend: Halton points under the tan map, randomized by
// seeded Cranley-Patterson shifts. Sample sums are accumulated in fixed-size
// blocks and combined in block order, so the serial and OpenMP kernels
// produce bit-identical results.

constexpr unsigned kHaltonBases[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47, 53};
constexpr std::size_t kQmcBlock = 1024;
constexpr unsigned long long kHaltonOffset = 64;
constexpr int kQmcShifts = 16;

double radical_inverse(unsigned base, unsigned long long i) {
  const double inv = 1.0 / base;
  double f = inv, r = 0.0;
  while (i > 0) {
    r += static_cast<double>(i % base) * f;
    i /= base;
    f *= inv;
  }
  return r;
}

// Shifted Halton point mapped to R^d; returns the integrand value times the
// tan-map Jacobian.
double qmc_sample(const Integrand& f, int d, unsigned long long index, const double* shift) {
  double k[16];
  double jac = 1.0;
  const double scale = f.scale();
  for (int c = 0; c < d; ++c) {
    double y = radical_inverse(kHaltonBases[c], kHaltonOffset + index) + shift[c];
    y -= std::floor(y);
    const double theta = M_PI * (y - 0.5);
    const double sec = 1.0 / std::cos(theta);
    k[c] = scale * std::tan(theta);
    jac *= M_PI * scale * sec * sec;
  }
  const double v = f(k) * jac;
  return std::isfinite(v) ? v : 0.0;
}

// Partial sums per (shift, block), evaluated serially or with OpenMP.
void qmc_block_sums(const Integrand& f, int d, unsigned long long from, unsigned long long to,
                    const std::vector<double>& shifts, std::vector<double>& block_sums,
                    std::size_t n_blocks, Execution exec) {
  const std::size_t tasks = n_blocks * kQmcShifts;
  auto run_task = [&](std::size_t t) {
    const std::size_t block = t / kQmcShifts;
    const std::size_t r = t % kQmcShifts;
    const unsigned long long lo = from + block * kQmcBlock;
    const unsigned long long hi = std::min<unsigned long long>(lo + kQmcBlock, to);
    double sum = 0.0;
    for (unsigned long long i = lo; i < hi; ++i)
      sum += qmc_sample(f, d, i, shifts.data() + r * d);
    block_sums[t] = sum;
  };
  if (exec == Execution::OpenMp) {
#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < tasks; ++t) run_task(t);
  } else {
    for (std::size_t t = 0; t < tasks; ++t) run_task(t);
  }
}

IntegralResult integrate_qmc(const IntegralSpec& spec, const Integrand& f, Execution exec) {
  const int d = spec.d;
  if (d > 12) fail("DimensionMismatch", "QMC backend supports d <= 12");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> shifts(static_cast<std::size_t>(kQmcShifts) * d);
  for (double& u : shifts) u = uniform(rng);

  std::vector<double> shift_sums(kQmcShifts, 0.0);
  unsigned long long n = 0;
  IntegralResult result;
  result.method = Method::QuasiMonteCarlo;

  const unsigned long long n_cap = 1ull << 22;
  for (unsigned long long target = 1ull << 13; target <= n_cap; target *= 2) {
    const std::size_t n_blocks = static_cast<std::size_t>((target - n + kQmcBlock - 1) / kQmcBlock);
    std::vector<double> block_sums(n_blocks * kQmcShifts, 0.0);
    qmc_block_sums(f, d, n, target, shifts, block_sums, n_blocks, exec);
    for (std::size_t block = 0; block < n_blocks; ++block)
      for (int r = 0; r < kQmcShifts; ++r)
        shift_sums[r] += block_sums[block * kQmcShifts + r];
    result.n_evaluations += static_cast<long long>((target - n) * kQmcShifts);
    n = target;

    double mean = 0.0;
    for (double s : shift_sums) mean += s / static_cast<double>(n);
    mean /= kQmcShifts;
    double var = 0.0;
    for (double s : shift_sums) {
      const double q = s / static_cast<double>(n) - mean;
      var += q * q;
    }
    result.value = mean;
    result.error_estimate = std::sqrt(var / (kQmcShifts - 1));
    result.tolerance_reached =
        result.error_estimate <= spec.tol * std::max(std::abs(mean), 1e-300);
    if (result.tolerance_reached) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Adaptive backend: nested 1-D Gauss-Kronrod 7/15 over the tan-compactified
// box, refining the worst panel first until the level's error budget is met.
// Split decisions depend only on panel data, so results are deterministic.

constexpr double kGkNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
// Gauss-7 weights aligned with the odd Kronrod nodes.
constexpr double kGaussWeights[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                     0.417959183673469, 0.381830050505119, 0.279705391489277,
                                     0.129484966168870};

struct LevelValue {
  double value = 0.0;
  double error = 0.0;
};

struct AdaptiveState {
  const Integrand* f = nullptr;
  long long evaluations = 0;
  bool tolerance_reached = true;
  // Axis whose panel nodes are evaluated in parallel (-1 for none). Each
  // node spawns an independent inner integral; results are combined in node
  // order, so serial and OpenMP runs are bit-identical.
  int parallel_axis = -1;
};

// Integrates over theta_axis..theta_0 with dimensions above `axis` fixed in
// `point` (momentum coordinates, already tan-mapped). `abs_tol` is an
// absolute error budget for this 1-D integral: half is spent on own panel
// errors, half is handed down to the inner integrals, weighted by the
// Jacobian so that tail nodes get budgets they meet with a single panel.
LevelValue nested_quadrature(AdaptiveState& state, int axis, std::vector<double>& point,
                             double abs_tol);

// Per-level compactification scale: the propagators seen along this axis
// live at |k| ~ sqrt(base^2 + |fixed outer coordinates|^2), so the tan map
// is stretched accordingly. Each 1-D integral is an exact substitution.
double level_scale(const AdaptiveState& state, int axis, const std::vector<double>& point) {
  double s2 = state.f->scale() * state.f->scale();
  for (int c = axis + 1; c < state.f->dim(); ++c) s2 += point[c] * point[c];
  return std::sqrt(s2);
}

LevelValue eval_level(AdaptiveState& state, int axis, double theta, std::vector<double>& point,
                      double inner_tol) {
  const double scale = level_scale(state, axis, point);
  const double sec = 1.0 / std::cos(theta);
  const double jac = scale * sec * sec;
  point[axis] = scale * std::tan(theta);
  if (axis == 0) {
    state.evaluations++;
    const double v = (*state.f)(point.data()) * jac;
    return {std::isfinite(v) ? v : 0.0, 0.0};
  }
  LevelValue inner = nested_quadrature(state, axis - 1, point, inner_tol / jac);
  return {inner.value * jac, inner.error * jac};
}

struct Panel {
  double a = 0.0, b = 0.0;
  double kronrod = 0.0, gauss = 0.0, inherited = 0.0;
};

Panel evaluate_panel(AdaptiveState& state, int axis, double a, double b,
                     std::vector<double>& point, double inner_tol) {
  Panel p;
  p.a = a;
  p.b = b;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);

  LevelValue values[15];
  if (axis == state.parallel_axis && axis > 0) {
    long long evals[15];
    bool reached[15];
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 0; j < 15; ++j) {
      AdaptiveState sub;
      sub.f = state.f;
      std::vector<double> local = point;
      values[j] = eval_level(sub, axis, mid + half * kGkNodes[j], local, inner_tol);
      evals[j] = sub.evaluations;
      reached[j] = sub.tolerance_reached;
    }
    for (int j = 0; j < 15; ++j) {
      state.evaluations += evals[j];
      state.tolerance_reached = state.tolerance_reached && reached[j];
    }
  } else {
    for (int j = 0; j < 15; ++j)
      values[j] = eval_level(state, axis, mid + half * kGkNodes[j], point, inner_tol);
  }

  int gauss_index = 0;
  for (int j = 0; j < 15; ++j) {
    p.kronrod += kKronrodWeights[j] * values[j].value * half;
    p.inherited += kKronrodWeights[j] * std::abs(values[j].error) * half;
    if (j % 2 == 1) {
      p.gauss += kGaussWeights[gauss_index] * values[j].value * half;
      ++gauss_index;
    }
  }
  return p;
}

LevelValue nested_quadrature(AdaptiveState& state, int axis, std::vector<double>& point,
                             double abs_tol) {
  const double lo = -M_PI_2, hi = M_PI_2;
  const double full_width = hi - lo;
  const double panel_budget = 0.5 * abs_tol;
  const double inner_tol = 0.5 * abs_tol / full_width;
  const double min_width = full_width * 0x1p-40;
  constexpr std::size_t kMaxPanels = 512;

  // Worst panel first; ties resolved by the interval itself, so the
  // refinement sequence is a deterministic function of the integrand.
  auto worse = [](const Panel& x, const Panel& y) {
    const double ex = std::abs(x.kronrod - x.gauss), ey = std::abs(y.kronrod - y.gauss);
    if (ex != ey) return ex > ey;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  };
  std::multiset<Panel, decltype(worse)> panels(worse);
  panels.insert(evaluate_panel(state, axis, lo, hi, point, inner_tol));
  double local_error = std::abs(panels.begin()->kronrod - panels.begin()->gauss);

  while (local_error > panel_budget && panels.size() < kMaxPanels) {
    const Panel worst = *panels.begin();
    if (worst.b - worst.a <= min_width) break;
    panels.erase(panels.begin());
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = evaluate_panel(state, axis, worst.a, mid, point, inner_tol);
    const Panel right = evaluate_panel(state, axis, mid, worst.b, point, inner_tol);
    local_error -= std::abs(worst.kronrod - worst.gauss);
    local_error += std::abs(left.kronrod - left.gauss) + std::abs(right.kronrod - right.gauss);
    panels.insert(left);
    panels.insert(right);
  }
  if (local_error > panel_budget) state.tolerance_reached = false;

  LevelValue total;
  for (const Panel& p : panels) {
    total.value += p.kronrod;
    total.error += std::abs(p.kronrod - p.gauss) + p.inherited;
  }
  return total;
}

// Single Gauss-Kronrod panel per level, used to bootstrap the absolute
// tolerance scale before the adaptive pass.
double coarse_pass(AdaptiveState& state, int axis, std::vector<double>& point) {
  const double mid = 0.0, half = M_PI_2;
  double sum = 0.0;
  const double scale = level_scale(state, axis, point);
  for (int j = 0; j < 15; ++j) {
    const double theta = mid + half * kGkNodes[j];
    const double sec = 1.0 / std::cos(theta);
    point[axis] = scale * std::tan(theta);
    double v;
    if (axis == 0) {
      state.evaluations++;
      v = (*state.f)(point.data());
      if (!std::isfinite(v)) v = 0.0;
    } else {
      v = coarse_pass(state, axis - 1, point);
    }
    sum += kKronrodWeights[j] * v * scale * sec * sec * half;
  }
  return sum;
}

IntegralResult integrate_adaptive(const IntegralSpec& spec, const Integrand& f, Execution exec) {
  if (spec.d > 6) fail("DimensionMismatch", "adaptive quadrature is capped at d = 6; use QMC");
  AdaptiveState state;
  state.f = &f;
  if (exec == Execution::OpenMp) state.parallel_axis = spec.d - 1;
  std::vector<double> point(spec.d, 0.0);

  double estimate = std::abs(coarse_pass(state, spec.d - 1, point));
  LevelValue top;
  for (int attempt = 0; attempt < 3; ++attempt) {
    state.tolerance_reached = true;
    const double abs_tol = spec.tol * std::max(estimate, 1e-300);
    top = nested_quadrature(state, spec.d - 1, point, abs_tol);
    // Rerun when the bootstrap scale was badly off.
    if (std::abs(top.value) > 0.1 * estimate && std::abs(top.value) < 10.0 * estimate) break;
    estimate = std::max(std::abs(top.value), 1e-300);
  }

  IntegralResult result;
  result.method = Method::AdaptiveQuadrature;
  result.value = top.value;
  result.error_estimate = top.error;
  result.n_evaluations = state.evaluations;
  result.tolerance_reached = state.tolerance_reached;
  return result;
}

}  // namespace

namespace {

// Normalization fixed by the requirement that the d-th power of a single
// propagator integrates to m^{-d}: Gamma(d)/(Gamma(d/2) pi^{d/2}). At d = 2
// this is the familiar 1/pi.
double integral_prefactor(int d) {
  double num = 1.0, den = 1.0;
  for (int i = 1; i < d; ++i) num *= i;
  for (int i = 1; i < d / 2; ++i) den *= i;
  return num / (den * std::pow(M_PI, 0.5 * d));
}

}  // namespace

IntegralResult integrate(const IntegralSpec& spec, Execution exec) {
  if (!(spec.tol > 0)) fail("BadSpec", "tolerance must be positive");
  const Integrand f = Integrand::build(spec);
  IntegralResult result = spec.method == Method::QuasiMonteCarlo
                              ? integrate_qmc(spec, f, exec)
                              : integrate_adaptive(spec, f, exec);
  const double prefactor = integral_prefactor(spec.d);
  result.value *= prefactor;
  result.error_estimate *= prefactor;
  return result;
}

HomogeneityCheck check_homogeneity(const IntegralSpec& spec, const Rational& lambda) {
  if (lambda <= 0) fail("BadSpec", "scaling factor must be positive");
  IntegralSpec scaled = spec;
  for (auto& row : scaled.kinematics.s)
    for (auto& entry : row) entry *= lambda;
  for (auto& mass : scaled.kinematics.m2) mass *= lambda;

  long nu_total = 0;
  for (int e : spec.nu) nu_total += e;

  HomogeneityCheck check;
  check.lhs = integrate(scaled).value;
  const double base = integrate(spec).value;
  check.rhs = std::pow(to_double(lambda), 0.5 * spec.d - static_cast<double>(nu_total)) * base;
  check.rel_error =
      std::abs(check.lhs - check.rhs) / std::max(std::abs(check.lhs), std::abs(check.rhs));
  return check;
}

double check_quotient_consistency(const KinematicPoint& k, const std::set<int>& pinched, int d,
                                  const std::vector<int>& nu_survivors, Method method, double tol,
                                  std::uint64_t seed) {
  // Path (a): parent kinematics, pinched propagators absent.
  IntegralSpec parent;
  parent.graph = CutQuotientGraph{k.n, pinched, {}};
  parent.d = d;
  parent.nu = nu_survivors;
  parent.kinematics = k;
  parent.method = method;
  parent.tol = tol;
  parent.seed = seed;
  const double via_parent = integrate(parent).value;

  // Path (b): the reduced k-gon at merged kinematics.
  const Reduction red = reduce_to_k_gon(parent.graph);
  IntegralSpec reduced = parent;
  reduced.graph = red.graph;
  reduced.kinematics = merge_kinematics(k, pinched);
  const double via_merged = integrate(reduced).value;

  return std::abs(via_parent - via_merged) /
         std::max({std::abs(via_parent), std::abs(via_merged), 1e-300});
}

}  // namespace loopmot

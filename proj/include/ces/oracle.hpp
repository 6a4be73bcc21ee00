#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ces/potentials.hpp"
#include "ces/types.hpp"

// Independent verification machinery: finite-difference residuals, an
// adaptive Runge-Kutta integrator, numerical Wronskians, and the executable
// form of the coupled-system consistency argument. Nothing here evaluates a
// hypergeometric series; solutions enter only as black-box samples, so a bug
// in the special-function stack cannot certify itself.

namespace ces::oracle {

enum class Spacing { uniform, log };

struct GridSpec {
  double start = 0.0;
  double end = 0.0;
  int points = 0;
  Spacing spacing = Spacing::uniform;

  GridSpec(double start_, double end_, int points_, Spacing spacing_ = Spacing::uniform)
      : start(start_), end(end_), points(points_), spacing(spacing_) {
    if (!(start < end)) throw ParameterError("GridSpec: requires start < end");
    if (points < 3) throw ParameterError("GridSpec: requires points >= 3");
    if (spacing == Spacing::log && !(start > 0.0)) {
      throw ParameterError("GridSpec: log spacing requires start > 0");
    }
  }
};

inline std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> pts(static_cast<std::size_t>(g.points));
  const int n = g.points - 1;
  if (g.spacing == Spacing::uniform) {
    const double h = (g.end - g.start) / n;
    for (int i = 0; i <= n; ++i) pts[i] = g.start + h * i;
  } else {
    const double la = std::log(g.start), lb = std::log(g.end);
    const double h = (lb - la) / n;
    for (int i = 0; i <= n; ++i) pts[i] = std::exp(la + h * i);
  }
  pts.front() = g.start;
  pts.back() = g.end;
  return pts;
}

/// Outcome of one named check: passed iff max_residual <= tolerance.
struct VerificationReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  int samples = 0;
};

inline VerificationReport make_report(std::string name, double max_residual,
                                      double tolerance, int samples) {
  VerificationReport r;
  r.name = std::move(name);
  r.max_residual = max_residual;
  r.tolerance = tolerance;
  r.samples = samples;
  r.passed = max_residual <= tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Finite differences (5-point central stencils).

/// f'(t) from values at t +- h, t +- 2h.
template <typename Fn>
Complex fd_derivative5(const Fn& f, double t, double h) {
  return (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) /
         (12.0 * h);
}

/// One Richardson step on the 5-point first derivative (h and h/2).
template <typename Fn>
Complex fd_derivative5_richardson(const Fn& f, double t, double h) {
  const Complex d1 = fd_derivative5(f, t, h);
  const Complex d2 = fd_derivative5(f, t, 0.5 * h);
  return (16.0 * d2 - d1) / 15.0;
}

// ---------------------------------------------------------------------------
// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on a two-component
// complex state.

using State = std::array<Complex, 2>;
using OdeRhs = std::function<State(double, const State&)>;

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
};

namespace detail {

inline double state_norm(const State& y) {
  return std::max(std::abs(y[0]), std::abs(y[1]));
}

// Dormand-Prince coefficients.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
  State y;
  double error;  // scaled error estimate
};

template <typename Rhs>
StepResult dp5_step(const Rhs& f, double x, const State& y, double h,
                    const IntegratorOptions& opt) {
  auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms,
                 double h_) {
    State out = base;
    for (const auto& [w, k] : terms) {
      out[0] += h_ * w * (*k)[0];
      out[1] += h_ * w * (*k)[1];
    }
    return out;
  };
  const State k1 = f(x, y);
  const State k2 = f(x + c2 * h, axpy(y, {{a21, &k1}}, h));
  const State k3 = f(x + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
  const State k4 = f(x + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
  const State k5 = f(x + c5 * h,
                     axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
  const State k6 = f(x + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                     {a64, &k4}, {a65, &k5}}, h));
  const State y5 = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
  const State k7 = f(x + h, y5);

  State errv{};
  errv[0] = h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] +
                 e7 * k7[0]);
  errv[1] = h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] +
                 e7 * k7[1]);
  const double scale =
      opt.atol + opt.rtol * std::max(state_norm(y), state_norm(y5));
  return {y5, state_norm(errv) / scale};
}

}  // namespace detail

/// Propagates y from x0 to x1 (either direction), adaptively controlling the
/// local error against opt. Throws ConvergenceError on step underflow.
template <typename Rhs>
State integrate_to(const Rhs& f, double x0, const State& y0, double x1,
                   const IntegratorOptions& opt = {}) {
  if (x0 == x1) return y0;
  const double dir = (x1 > x0) ? 1.0 : -1.0;
  double x = x0;
  State y = y0;
  double h = dir * std::min(0.1, std::abs(x1 - x0));
  while (dir * (x1 - x) > 0.0) {
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) {
      throw ConvergenceError("integrate_to: step size underflow at x = " +
                             std::to_string(x));
    }
    if (dir * (x + h - x1) > 0.0) h = x1 - x;
    const auto step = detail::dp5_step(f, x, y, h, opt);
    if (step.error <= 1.0) {
      x += h;
      y = step.y;
    }
    double fac = 0.9 * std::pow(std::max(step.error, 1e-16), -0.2);
    fac = std::min(5.0, std::max(0.2, fac));
    h *= fac;
  }
  return y;
}

/// Fixed-step DP5 run (no adaptivity); used to measure the integrator order.
template <typename Rhs>
State integrate_fixed_steps(const Rhs& f, double x0, const State& y0, double x1,
                            int steps) {
  const double h = (x1 - x0) / steps;
  State y = y0;
  IntegratorOptions opt;  // unused by the error path here
  for (int i = 0; i < steps; ++i) {
    y = detail::dp5_step(f, x0 + i * h, y, h, opt).y;
  }
  return y;
}

// ---------------------------------------------------------------------------
// Schrodinger propagation in x: state (Z, Z').

/// Independent solver for Z'' + (omega^2 - V(x)) Z = 0 with a caller-supplied
/// potential; integrate_radial wraps it with the closed-form V.
inline std::vector<SolutionSample> integrate_schrodinger(
    const std::function<double(double)>& potential_fn, double omega,
    const SolutionSample& ic, const GridSpec& grid,
    const IntegratorOptions& opt = {}) {
  if (ic.coord_tag != Coordinate::x) {
    throw ParameterError("integrate_schrodinger: initial sample must be tagged x");
  }
  if (!(grid.start >= 1e-3)) {
    throw ParameterError("integrate_schrodinger: grid must keep x >= 1e-3");
  }
  if (!(ic.coord >= grid.start && ic.coord <= grid.end)) {
    throw ParameterError("integrate_schrodinger: x0 must lie within the grid");
  }
  auto rhs = [&](double x, const State& y) -> State {
    return {y[1], (potential_fn(x) - omega * omega) * y[0]};
  };
  const auto pts = grid_points(grid);
  std::vector<SolutionSample> out(pts.size());
  // March outward from x0 in both directions, reusing the previous endpoint.
  std::size_t first_above = 0;
  while (first_above < pts.size() && pts[first_above] < ic.coord) ++first_above;
  State y{ic.value, ic.derivative};
  double x = ic.coord;
  for (std::size_t i = first_above; i < pts.size(); ++i) {
    y = integrate_to(rhs, x, y, pts[i], opt);
    x = pts[i];
    out[i] = {Coordinate::x, x, y[0], y[1]};
  }
  y = {ic.value, ic.derivative};
  x = ic.coord;
  for (std::size_t i = first_above; i-- > 0;) {
    y = integrate_to(rhs, x, y, pts[i], opt);
    x = pts[i];
    out[i] = {Coordinate::x, x, y[0], y[1]};
  }
  return out;
}

/// Adaptive propagation of (Z, Z') for the closed-form partner potential.
inline std::vector<SolutionSample> integrate_radial(
    const potentials::PotentialSpec& spec, double omega,
    const SolutionSample& ic, const GridSpec& grid,
    const IntegratorOptions& opt = {}) {
  return integrate_schrodinger(
      [&spec](double x) { return potentials::potential(x, spec); }, omega, ic,
      grid, opt);
}

// ---------------------------------------------------------------------------
// Residual checks.

/// Black-box solution access: (value, derivative) at a coordinate.
using SampleFn = std::function<SolutionSample(double)>;

/// Normalized residual of d/dz (z Z') + (omega^2 - V_z)/z Z = 0 at one point,
/// from black-box (value, derivative) samples. d/dz(z Z') is a 5-point
/// Richardson-extrapolated stencil on the sampled flux z Z'; a second
/// component checks that the reported derivative matches a finite difference
/// of the values, so the sample pair cannot satisfy the equation with an
/// inconsistent derivative. The step scales with the distance to the
/// singular endpoints: solution derivatives grow like min(z, 1-z)^{-k}
/// there, and near the series/connection seam the sample noise (~1e-12) must
/// not be divided by a tiny h.
inline double ode_residual_z_point(const SampleFn& f,
                                   const potentials::PotentialSpec& spec,
                                   double omega, double z) {
  const double h = std::min(4e-3, 8e-3 * std::min(z, 1.0 - z));
  const SolutionSample s0 = f(z);
  auto flux_fd = [&](double step) {
    const std::array<double, 4> at = {z - 2.0 * step, z - step, z + step,
                                      z + 2.0 * step};
    const std::array<SolutionSample, 4> nb = {f(at[0]), f(at[1]), f(at[2]),
                                              f(at[3])};
    const Complex fd =
        (-at[3] * nb[3].derivative + 8.0 * at[2] * nb[2].derivative -
         8.0 * at[1] * nb[1].derivative + at[0] * nb[0].derivative) /
        (12.0 * step);
    const Complex vd =
        (-nb[3].value + 8.0 * nb[2].value - 8.0 * nb[1].value + nb[0].value) /
        (12.0 * step);
    return std::pair{fd, vd};
  };
  const auto [fd1, vd1] = flux_fd(h);
  const auto [fd2, vd2] = flux_fd(0.5 * h);
  const Complex flux_d = (16.0 * fd2 - fd1) / 15.0;
  const Complex value_d = (16.0 * vd2 - vd1) / 15.0;

  const double m = spec.m;
  const double t_omega = omega * omega / z * std::abs(s0.value);
  const double t_coulomb = m * m / (1.0 - z) * std::abs(s0.value);
  const double t_singular = 0.5 * std::abs(m) /
                            (std::sqrt(z) * std::pow(1.0 - z, 1.5)) *
                            std::abs(s0.value);
  const Complex eq =
      flux_d + (omega * omega - potentials::potential_z(z, spec)) / z * s0.value;
  const double scale = std::max({std::abs(flux_d), t_omega, t_coulomb, t_singular});
  const double res_eq = std::abs(eq) / std::max(scale, 1e-300);

  const double dscale =
      std::max({std::abs(value_d), std::abs(s0.derivative), std::abs(s0.value)});
  const double res_deriv =
      std::abs(value_d - s0.derivative) / std::max(dscale, 1e-300);

  return std::max(res_eq, res_deriv);
}

/// Worst pointwise residual over the grid.
inline VerificationReport ode_residual_z(const SampleFn& f,
                                         const potentials::PotentialSpec& spec,
                                         double omega, const GridSpec& grid,
                                         std::string name = "ode_residual_z",
                                         double tolerance = 1e-8) {
  if (!(grid.start >= 1e-3 && grid.end <= 1.0 - 1e-3)) {
    throw ParameterError("ode_residual_z: grid must stay 1e-3 away from z = 0, 1");
  }
  const auto pts = grid_points(grid);
  double worst = 0.0;
  for (const double z : pts) {
    worst = std::max(worst, ode_residual_z_point(f, spec, omega, z));
  }
  return make_report(std::move(name), worst, tolerance,
                     static_cast<int>(pts.size()));
}

/// Residual of the first-order coupled pair
///   z R~1' + i w R~1 = +i m z^{1/2}(1-z)^{-1/2} R~2,
///   z R~2' - i w R~2 = -i m z^{1/2}(1-z)^{-1/2} R~1,
/// normalized by the largest participating magnitude.
inline double coupled_residual(double z, std::pair<Complex, Complex> pair,
                               std::pair<Complex, Complex> pair_deriv,
                               double omega, double m) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("coupled_residual: requires 0 < z < 1");
  const Complex iw{0.0, omega};
  const Complex coupling = kI * m * std::sqrt(z) / std::sqrt(1.0 - z);
  const auto& [r1, r2] = pair;
  const auto& [dr1, dr2] = pair_deriv;
  const Complex l1 = z * dr1 + iw * r1 - coupling * r2;
  const Complex l2 = z * dr2 - iw * r2 + coupling * r1;
  const double s1 = std::max({std::abs(z * dr1), std::abs(iw * r1), std::abs(coupling * r2)});
  const double s2 = std::max({std::abs(z * dr2), std::abs(iw * r2), std::abs(coupling * r1)});
  return std::max(std::abs(l1) / std::max(s1, 1e-300),
                  std::abs(l2) / std::max(s2, 1e-300));
}

/// f g' - g f'. Both samples must sit at the same tagged coordinate.
inline Complex wronskian_numeric(const SolutionSample& f, const SolutionSample& g) {
  if (f.coord_tag != g.coord_tag || f.coord != g.coord) {
    throw ParameterError("wronskian_numeric: samples at mismatched coordinates");
  }
  return f.value * g.derivative - g.value * f.derivative;
}

// ---------------------------------------------------------------------------
// Executable form of the consistency argument: integrating the first-order
// system R1' - i w R1 = W R2, R2' + i w R2 = W R1 from arbitrary initial data
// and forming Z_+- = R1 +- R2 must solve the Schrodinger equations of V_+-.

struct AppendixOptions {
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  double fd_step = 5e-3;
  IntegratorOptions integrator{1e-12, 1e-14};
};

inline VerificationReport appendix_check_from(
    double omega, double m, const GridSpec& grid, Complex r1_0, Complex r2_0,
    const AppendixOptions& opt = {}) {
  if (!(grid.start >= 1e-3)) {
    throw ParameterError("appendix_check: grid must keep x >= 1e-3");
  }
  const bool degenerate = (r1_0 == Complex{} && r2_0 == Complex{});
  auto rhs = [omega, m](double x, const State& r) -> State {
    const double w = potentials::superpotential(x, m);
    return {Complex{0.0, omega} * r[0] + w * r[1],
            Complex{0.0, -omega} * r[1] + w * r[0]};
  };

  // Sample (R1, R2) on 5-point clusters around every grid point. Clusters
  // must stay disjoint and ordered so that cluster j owns xs[5j .. 5j+4].
  const auto pts = grid_points(grid);
  const double h = opt.fd_step;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] - pts[i - 1] <= 4.0 * h) {
      throw ParameterError("appendix_check: grid spacing must exceed 4x the fd step");
    }
  }
  std::vector<double> xs;
  xs.reserve(pts.size() * 5);
  for (const double x : pts) {
    for (int k = -2; k <= 2; ++k) xs.push_back(x + k * h);
  }
  if (xs.front() < 1e-3) {
    throw ParameterError("appendix_check: fd cluster leaves the x >= 1e-3 region");
  }

  const double x0 = pts[pts.size() / 2];
  std::vector<State> states(xs.size());
  std::size_t first_above = 0;
  while (first_above < xs.size() && xs[first_above] < x0) ++first_above;
  State y{r1_0, r2_0};
  double x = x0;
  for (std::size_t i = first_above; i < xs.size(); ++i) {
    y = integrate_to(rhs, x, y, xs[i], opt.integrator);
    x = xs[i];
    states[i] = y;
  }
  y = {r1_0, r2_0};
  x = x0;
  for (std::size_t i = first_above; i-- > 0;) {
    y = integrate_to(rhs, x, y, xs[i], opt.integrator);
    x = xs[i];
    states[i] = y;
  }

  // Z_sign' comes from the system right-hand side; the second derivative of
  // the Schrodinger residual is a 5-point first difference of that flux.
  auto z_and_deriv = [&](std::size_t idx, double sf) -> std::pair<Complex, Complex> {
    const State& r = states[idx];
    const State d = rhs(xs[idx], r);
    return {r[0] + sf * r[1], d[0] + sf * d[1]};
  };

  double worst = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const std::size_t base = j * 5;
    for (const Sign sign : {Sign::plus, Sign::minus}) {
      const double sf = sign_factor(sign);
      const auto [z0, dz0] = z_and_deriv(base + 2, sf);
      const Complex d2 =
          (-z_and_deriv(base + 4, sf).second + 8.0 * z_and_deriv(base + 3, sf).second -
           8.0 * z_and_deriv(base + 1, sf).second + z_and_deriv(base + 0, sf).second) /
          (12.0 * h);
      const double v = potentials::potential(pts[j], {m, sign});
      const Complex res = d2 + (omega * omega - v) * z0;
      const double scale = std::max(
          {std::abs(d2), omega * omega * std::abs(z0), std::abs(v) * std::abs(z0)});
      if (scale > 1e-300) worst = std::max(worst, std::abs(res) / scale);
    }
  }
  return make_report(degenerate ? "appendix_check[degenerate]" : "appendix_check",
                     worst, 1e-7, static_cast<int>(pts.size()));
}

/// Runs the check from one pseudorandom initial condition.
inline VerificationReport appendix_check(double omega, double m,
                                         const GridSpec& grid,
                                         const AppendixOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Complex r1{u(rng), u(rng)};
  const Complex r2{u(rng), u(rng)};
  return appendix_check_from(omega, m, grid, r1, r2, opt);
}

}  // namespace ces::oracle

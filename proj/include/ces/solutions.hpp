#pragma once

#include <cmath>
#include <utility>

#include "ces/special.hpp"
#include "ces/types.hpp"

// Exact solutions of the Schrodinger pair for V+-: the hypergeometric
// parameter algebra, the two fundamental systems Z^I/Z^II in z = e^{-x} and
// their v = 1-z counterparts, the closed-form Wronskian, and the zero-energy
// states of the broken-supersymmetry sector.

namespace ces::solutions {

/// All spectral constants of one (omega, m): energy E = omega^2, the local
/// exponents A_k, the z-family parameters (a_k, b_k, c_k), the v-family
/// parameters (B_k, alpha_k, beta_k, gamma_k), and the normalizations G1, H1.
struct SpectralParams {
  double omega = 0.0;
  double m = 0.0;
  Complex A1, A2;
  Complex a1, b1, c1, a2, b2, c2;
  Complex B1, B2;
  Complex alpha1, beta1, gamma1, alpha2, beta2, gamma2;
  Complex G1{1.0, 0.0}, H1{1.0, 0.0};
};

/// Populates the full parameter set for omega > 0, m != 0 with the Wronskian
/// normalization G1 = H1 = 1. The exponents satisfy the indicial equation
/// A_k^2 - A_k/2 - i omega eps/2 + omega^2 = 0 with eps = +1 (k=1), -1 (k=2).
inline SpectralParams make_params(double omega, double m) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ParameterError("make_params: requires omega > 0 (zero-energy states have their own entry points)");
  }
  if (m == 0.0 || !std::isfinite(m)) {
    throw ParameterError("make_params: requires m != 0");
  }
  const double delta = std::sqrt(m * m + omega * omega);
  SpectralParams p;
  p.omega = omega;
  p.m = m;
  p.A1 = Complex{0.5, omega};
  p.A2 = Complex{0.0, omega};
  p.a1 = p.A1 + Complex{0.0, delta};
  p.b1 = p.A1 - Complex{0.0, delta};
  p.c1 = 2.0 * p.A1 + 0.5;
  p.a2 = p.A2 + Complex{0.0, delta};
  p.b2 = p.A2 - Complex{0.0, delta};
  p.c2 = 2.0 * p.A2 + 0.5;
  p.B1 = Complex{0.5, omega};
  p.B2 = Complex{0.0, omega};
  p.alpha1 = p.B1 + Complex{0.0, delta};
  p.beta1 = p.B1 - Complex{0.0, delta};
  p.gamma1 = Complex{0.5, 0.0};
  p.alpha2 = p.B2 + Complex{0.0, delta};
  p.beta2 = p.B2 - Complex{0.0, delta};
  p.gamma2 = Complex{0.5, 0.0};

  for (int k = 0; k < 2; ++k) {
    const Complex A = (k == 0) ? p.A1 : p.A2;
    const double eps = (k == 0) ? 1.0 : -1.0;
    const Complex res = A * A - 0.5 * A - Complex{0.0, 0.5 * eps * omega} +
                        omega * omega;
    if (std::abs(res) > 1e-14) {
      throw ParameterError("make_params: indicial equation residual exceeds 1e-14");
    }
  }
  for (const Complex& c : {p.c1, p.c2, 2.0 - p.c1, 2.0 - p.c2}) {
    if (special::dist_to_integer(c) <= 1e-10) {
      throw ParameterError("make_params: hypergeometric c parameter too close to an integer");
    }
  }
  return p;
}

namespace detail {

/// Value and d/dcoordinate of one solution component.
struct ValueDeriv {
  Complex value, deriv;
};

/// t(z) = coeff * z^A * 2F1(q; z) together with dt/dz.
inline ValueDeriv z_power_term(Complex coeff, Complex A,
                               const special::Hyp2F1Params& q, double z) {
  const Complex f = special::hyp2f1(q, z);
  const Complex fd = special::hyp2f1_derivative(q, z);
  const Complex pw = special::cpow_pos(z, A);
  return {coeff * pw * f, coeff * pw * (A / z * f + fd)};
}

/// t(v) = coeff * (1-v)^B * v^p * 2F1(q; v) together with dt/dv (p = 0 or
/// 1/2). The complement omv = 1 - v is supplied exactly: near x = infinity
/// (v -> 1) it is e^{-x}, far below the rounding floor of 1.0 - v.
inline ValueDeriv v_power_term(Complex coeff, Complex B, double p,
                               const special::Hyp2F1Params& q, double v,
                               double omv) {
  const Complex f = special::hyp2f1_cm(q, v, omv);
  const Complex fd = special::hyp2f1_derivative_cm(q, v, omv);
  const Complex pw = special::cpow_pos(omv, B) *
                     (p == 0.0 ? Complex{1.0, 0.0} : special::cpow_pos(v, p));
  Complex logderiv = -B / omv;
  if (p != 0.0) logderiv += p / v;
  return {coeff * pw * f, coeff * pw * (logderiv * f + fd)};
}

inline const Complex kPhase = std::exp(Complex{0.0, -special::kPi / 4.0});

}  // namespace detail

/// Values and z-derivatives of one (R~1, R~2) pair.
struct RtildePair {
  Complex r1, r2;    // values
  Complex dr1, dr2;  // d/dz
};

/// Family I: R~1 = G1 z^{A1} F(a1,b1;c1;z),
/// R~2 = G1 (c1-1)/(i m) z^{A2} F(a2,b2;c2;z).
inline RtildePair rtilde_pair_I_full(double z, const SpectralParams& p) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("rtilde_pair_I: requires 0 < z < 1");
  const auto t1 = detail::z_power_term(p.G1, p.A1, {p.a1, p.b1, p.c1}, z);
  const Complex g2 = p.G1 * (p.c1 - 1.0) / (kI * p.m);
  const auto t2 = detail::z_power_term(g2, p.A2, {p.a2, p.b2, p.c2}, z);
  return {t1.value, t2.value, t1.deriv, t2.deriv};
}

/// Family II: the second local exponents A_k + 1 - c_k with
/// H2 = H1 (a1-c1+1)(b1-c1+1) / (i m (2-c1)).
inline RtildePair rtilde_pair_II_full(double z, const SpectralParams& p) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("rtilde_pair_II: requires 0 < z < 1");
  const auto t1 = detail::z_power_term(
      p.H1, p.A1 + 1.0 - p.c1, {p.a1 - p.c1 + 1.0, p.b1 - p.c1 + 1.0, 2.0 - p.c1}, z);
  const Complex h2 =
      p.H1 * (p.a1 - p.c1 + 1.0) * (p.b1 - p.c1 + 1.0) / (kI * p.m * (2.0 - p.c1));
  const auto t2 = detail::z_power_term(
      h2, p.A2 + 1.0 - p.c2, {p.a2 - p.c2 + 1.0, p.b2 - p.c2 + 1.0, 2.0 - p.c2}, z);
  return {t1.value, t2.value, t1.deriv, t2.deriv};
}

inline std::pair<Complex, Complex> rtilde_pair_I(double z, const SpectralParams& p) {
  const auto r = rtilde_pair_I_full(z, p);
  return {r.r1, r.r2};
}

inline std::pair<Complex, Complex> rtilde_pair_II(double z, const SpectralParams& p) {
  const auto r = rtilde_pair_II_full(z, p);
  return {r.r1, r.r2};
}

inline RtildePair rtilde_pair_full(Branch branch, double z, const SpectralParams& p) {
  return branch == Branch::I ? rtilde_pair_I_full(z, p) : rtilde_pair_II_full(z, p);
}

/// Z_+- = e^{-i pi/4} (R~1 +- i R~2), as a (value, d/dz) sample tagged z.
inline SolutionSample solution_z_sample(Branch branch, Sign sign, double z,
                                        const SpectralParams& p) {
  const auto r = rtilde_pair_full(branch, z, p);
  const Complex is = kI * sign_factor(sign);
  return {Coordinate::z, z, detail::kPhase * (r.r1 + is * r.r2),
          detail::kPhase * (r.dr1 + is * r.dr2)};
}

inline Complex solution_z(Branch branch, Sign sign, double z,
                          const SpectralParams& p) {
  return solution_z_sample(branch, sign, z, p).value;
}

/// The same solution as a function of x (z = e^{-x}; dZ/dx = -z dZ/dz).
inline SolutionSample solution_x_sample(Branch branch, Sign sign, double x,
                                        const SpectralParams& p) {
  if (!(x > 0.0)) throw DomainError("solution_x_sample: requires x > 0");
  const double z = std::exp(-x);
  const auto s = solution_z_sample(branch, sign, z, p);
  return {Coordinate::x, x, s.value, -z * s.derivative};
}

/// v-family solutions (v = 1 - z, normalizations C~1 = C~2 = 1). The internal
/// relative sign is -sign_factor(sign): the plus member carries the minus
/// combinations
///   Z~I  = (1-z)... = (1-v)^{B1} F(alpha1,beta1;gamma1;v)
///          - (m/gamma1) (1-v)^{B2} v^{1/2} F(alpha2+1/2,beta2+1/2;3/2;v),
///   Z~II = (1-v)^{B1} v^{1/2} F(alpha1+1/2,beta1+1/2;3/2;v)
///          - (gamma1/m) (1-v)^{B2} F(alpha2,beta2;gamma2;v),
/// and the minus member flips the internal sign.
inline SolutionSample solution_v_sample_cm(Branch branch, Sign sign, double v,
                                           double omv, const SpectralParams& p) {
  if (!(v > 0.0 && omv > 0.0)) throw DomainError("solution_v_sample: requires 0 < v < 1");
  const double sf = sign_factor(sign);
  detail::ValueDeriv t1, t2;
  Complex rel;
  if (branch == Branch::I) {
    t1 = detail::v_power_term(1.0, p.B1, 0.0, {p.alpha1, p.beta1, p.gamma1}, v, omv);
    t2 = detail::v_power_term(1.0, p.B2, 0.5,
                              {p.alpha2 - p.gamma2 + 1.0, p.beta2 - p.gamma2 + 1.0,
                               2.0 - p.gamma2},
                              v, omv);
    rel = p.m / p.gamma1;
  } else {
    t1 = detail::v_power_term(1.0, p.B1, 0.5,
                              {p.alpha1 - p.gamma1 + 1.0, p.beta1 - p.gamma1 + 1.0,
                               2.0 - p.gamma1},
                              v, omv);
    t2 = detail::v_power_term(1.0, p.B2, 0.0, {p.alpha2, p.beta2, p.gamma2}, v, omv);
    rel = p.gamma1 / p.m;
  }
  return {Coordinate::v, v, t1.value - sf * rel * t2.value,
          t1.deriv - sf * rel * t2.deriv};
}

inline SolutionSample solution_v_sample(Branch branch, Sign sign, double v,
                                        const SpectralParams& p) {
  if (v >= 1.0) throw DomainError("solution_v_sample: requires 0 < v < 1");
  return solution_v_sample_cm(branch, sign, v, 1.0 - v, p);
}

inline Complex solution_v(Branch branch, Sign sign, double v,
                          const SpectralParams& p) {
  return solution_v_sample(branch, sign, v, p).value;
}

/// Wronskian (in x) of Z^I and Z^II: +- 2 omega (c1 - 1) / m for G1 = H1 = 1.
inline Complex wronskian_closed(Sign sign, const SpectralParams& p) {
  if (p.G1 != Complex{1.0, 0.0} || p.H1 != Complex{1.0, 0.0}) {
    throw ParameterError("wronskian_closed: stated for the G1 = H1 = 1 normalization");
  }
  return sign_factor(sign) * 2.0 * p.omega * (p.c1 - 1.0) / p.m;
}

// ---------------------------------------------------------------------------
// Zero-energy sector (omega = 0). Supersymmetry is broken: neither state is
// normalizable, so these never feed a bound-state search.

enum class ZeroEnergyWhich { psi_minus, psi_plus };

/// psi_0^-+ (x) = [ sqrt(1 - e^{-x}) + i e^{-x/2} ]^{+-2im} on the principal
/// branch; psi_minus carries exponent +2im.
inline Complex zero_energy_state(double x, double m, ZeroEnergyWhich which) {
  if (!(x > 0.0)) throw DomainError("zero_energy_state: requires x > 0");
  const double s = (which == ZeroEnergyWhich::psi_minus) ? 1.0 : -1.0;
  const Complex base{std::sqrt(-std::expm1(-x)), std::exp(-0.5 * x)};
  return std::exp(Complex{0.0, s * 2.0 * m} * std::log(base));
}

/// The same states in hypergeometric form:
/// psi_0^-+ = F(-+im, +-im; 1/2; z) -+ 2 m z^{1/2} F(1/2 -+ im, 1/2 +- im; 3/2; z).
inline Complex zero_energy_hypergeometric(double z, double m, ZeroEnergyWhich which) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("zero_energy_hypergeometric: requires 0 < z < 1");
  const double s = (which == ZeroEnergyWhich::psi_minus) ? 1.0 : -1.0;
  const Complex im{0.0, m};
  const Complex f1 = special::hyp2f1({-s * im, s * im, Complex{0.5, 0.0}}, z);
  const Complex f2 = special::hyp2f1(
      {0.5 - s * im, 0.5 + s * im, Complex{1.5, 0.0}}, z);
  return f1 - s * 2.0 * m * std::sqrt(z) * f2;
}

/// The omega = 0 limit of the family-I pair:
/// R~1 = z^{1/2} F(1/2+im, 1/2-im; 3/2; z), R~2 = (1/(2mi)) F(im, -im; 1/2; z).
inline std::pair<Complex, Complex> rtilde_pair_zero_energy(double z, double m) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("rtilde_pair_zero_energy: requires 0 < z < 1");
  if (m == 0.0) throw ParameterError("rtilde_pair_zero_energy: requires m != 0");
  const Complex im{0.0, m};
  const Complex r1 =
      std::sqrt(z) * special::hyp2f1({0.5 + im, 0.5 - im, Complex{1.5, 0.0}}, z);
  const Complex r2 = 1.0 / (2.0 * m * kI) *
                     special::hyp2f1({im, -im, Complex{0.5, 0.0}}, z);
  return {r1, r2};
}

/// Z_+- at omega = 0 built from the pair above; psi_0^-+ = -+ 2m e^{i pi/4} Z_-+.
inline Complex solution_z_zero_energy(Sign sign, double z, double m) {
  const auto [r1, r2] = rtilde_pair_zero_energy(z, m);
  return detail::kPhase * (r1 + kI * sign_factor(sign) * r2);
}

}  // namespace ces::solutions

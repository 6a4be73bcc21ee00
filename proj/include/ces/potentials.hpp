#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "ces/types.hpp"

// Closed forms of the superpotential W = -m/sqrt(e^x - 1), the partner pair
// V+- = m^2/(e^x-1) +- (m/2) e^x/(e^x-1)^{3/2} on x > 0, and their landmarks.

namespace ces::potentials {

/// One member of the partner pair: coupling m and branch sign.
struct PotentialSpec {
  double m;
  Sign sign;

  PotentialSpec(double m_, Sign sign_) : m(m_), sign(sign_) {
    if (m == 0.0) throw ParameterError("PotentialSpec: m = 0 degenerates both potentials");
    if (!std::isfinite(m)) throw ParameterError("PotentialSpec: m must be finite");
  }
};

/// Landmarks of V- in the s = e^x coordinate. zero_crossings = (s-, s+)
/// present for m >= 1, critical_points = (s2, s1) present for m >= sqrt(3)/2;
/// coincident pairs at the exact thresholds.
struct PotentialLandmarks {
  std::optional<std::pair<double, double>> zero_crossings;   // (s_minus, s_plus)
  std::optional<std::pair<double, double>> critical_points;  // (s2, s1)
};

namespace detail {
inline void require_positive_x(double x, const char* who) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(who) + ": requires x > 0");
  }
}
}  // namespace detail

/// W(x, m) = -m / sqrt(e^x - 1).
inline double superpotential(double x, double m) {
  detail::require_positive_x(x, "superpotential");
  return -m / std::sqrt(std::expm1(x));
}

/// V+-(x, m). expm1 keeps the small-x evaluation accurate.
inline double potential(double x, const PotentialSpec& spec) {
  detail::require_positive_x(x, "potential");
  const double em1 = std::expm1(x);
  const double half_m = 0.5 * spec.m;
  return spec.m * spec.m / em1 +
         sign_factor(spec.sign) * half_m * std::exp(x) / (em1 * std::sqrt(em1));
}

/// The same potential in the z = e^{-x} coordinate:
/// m^2 z/(1-z) +- (m/2) z^{1/2} (1-z)^{-3/2}.
inline double potential_z(double z, const PotentialSpec& spec) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("potential_z: requires 0 < z < 1");
  const double omz = 1.0 - z;
  const double half_m = 0.5 * spec.m;
  return spec.m * spec.m * z / omz +
         sign_factor(spec.sign) * half_m * std::sqrt(z) / (omz * std::sqrt(omz));
}

/// Zero crossings s-+ = 2m^2 -+ 2m sqrt(m^2-1) and critical points
/// s_{2,1} = 8m^2 - 2 -+ 4m sqrt(4m^2-3) of V-. Discriminants within 1e-14 of
/// zero are clamped, so the exact thresholds return coincident pairs.
inline PotentialLandmarks landmarks(double m) {
  if (!(m > 0.0)) throw ParameterError("landmarks: requires m > 0");
  PotentialLandmarks lm;
  double disc = m * m - 1.0;
  if (disc > -1e-14) {
    const double root = 2.0 * m * std::sqrt(std::max(disc, 0.0));
    lm.zero_crossings = {2.0 * m * m - root, 2.0 * m * m + root};
  }
  disc = 4.0 * m * m - 3.0;
  if (disc > -1e-14) {
    const double root = 4.0 * m * std::sqrt(std::max(disc, 0.0));
    lm.critical_points = {8.0 * m * m - 2.0 - root, 8.0 * m * m - 2.0 + root};
  }
  return lm;
}

/// V+- rewritten with hyperbolic functions, mu = m/sqrt(2):
/// mu^2 (coth(x/2) - 1) +- (mu/4) (1 + coth(x/2))^{1/2} / sinh(x/2).
/// coth t - 1 is evaluated as e^{-t}/sinh t, which avoids the cancellation
/// that the literal subtraction suffers for large x.
inline double hyperbolic_form(double x, const PotentialSpec& spec) {
  detail::require_positive_x(x, "hyperbolic_form");
  const double mu = spec.m / std::sqrt(2.0);
  const double t = 0.5 * x;
  const double sh = std::sinh(t);
  const double cothm1 = std::exp(-t) / sh;
  const double cothp1 = 1.0 + std::cosh(t) / sh;
  return mu * mu * cothm1 +
         sign_factor(spec.sign) * 0.25 * mu * std::sqrt(cothp1) / sh;
}

/// Leading-plus-subleading behavior near x = 0: m^2/x +- m/(2 x^{3/2}).
inline double near_zero_asymptote(double x, const PotentialSpec& spec) {
  detail::require_positive_x(x, "near_zero_asymptote");
  return spec.m * spec.m / x +
         sign_factor(spec.sign) * 0.5 * spec.m / (x * std::sqrt(x));
}

/// Hulthen potential Q/(e^x - 1), used only as a comparison curve.
inline double hulthen(double x, double Q) {
  detail::require_positive_x(x, "hulthen");
  return Q / std::expm1(x);
}

}  // namespace ces::potentials

#pragma once

#include <array>
#include <cmath>
#include <cstdio>

#include "ces/types.hpp"

// Complex Gamma and Gauss hypergeometric 2F1 for the parameter families used
// by the exact solutions: a, b, c complex, argument real in [0, 1).

namespace ces::special {

inline constexpr double kPi = 3.14159265358979323846;

/// Distance from w to the nearest non-positive integer (in the complex plane).
inline double dist_to_nonpositive_integer(Complex w) {
  double n = std::round(w.real());
  if (n > 0.0) n = 0.0;
  return std::hypot(w.real() - n, w.imag());
}

/// Distance from w to the nearest integer of any sign.
inline double dist_to_integer(Complex w) {
  return std::hypot(w.real() - std::round(w.real()), w.imag());
}

/// w^e on the principal branch for strictly positive real base.
inline Complex cpow_pos(double base, Complex e) {
  return std::exp(e * std::log(base));
}

namespace detail {

// Lanczos approximation in rational form, N = 13 with
// g = 6.024680040776729583740234375 (the double-precision-optimized set of
// Godfrey/Pugh as tabulated in Boost.Math). A 9-term g = 7 set tops out
// around 1e-13 relative, which the ~300x Gamma-coefficient cancellations in
// the z -> 1-z connection identities turn into > 1e-10 errors; this set
// keeps Gamma at a few ulps for the small |z| those identities use.
inline constexpr double kLanczosG = 6.024680040776729583740234375;
inline constexpr std::array<double, 13> kLanczosNum = {
    23531376880.410759688572007674451636754734,
    42919803642.649098768957899047001988850926,
    35711959237.355668049440185451547166705960,
    17921034426.037209699919755754458931112671,
    6039542586.3520280050642916443072979210699,
    1439720407.3117216736632230727949123939715,
    248874557.86205415651146038641322942321632,
    31426415.585400194380614231628318205362874,
    2876370.6289353724412254090516208496135991,
    186056.26539522349504029498971604569928220,
    8071.6720023658162106380029022722506138218,
    210.82427775157934587250973392071336271166,
    2.5066282746310002701649081771338373386264};

// Lanczos rational sum; valid for Re z >= 1/2. The denominator is the
// Pochhammer polynomial z (z+1) ... (z+11).
inline Complex lanczos_sum(Complex z) {
  Complex num{kLanczosNum[12], 0.0};
  for (int k = 11; k >= 0; --k) num = num * z + kLanczosNum[k];
  Complex den{1.0, 0.0};
  for (int k = 0; k < 12; ++k) den *= z + static_cast<double>(k);
  return num / den;
}

inline void require_off_pole(Complex z) {
  if (dist_to_nonpositive_integer(z) < 1e-12) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "gamma: argument (%g, %g) within 1e-12 of a non-positive integer pole",
                  z.real(), z.imag());
    throw PoleError(buf);
  }
}

}  // namespace detail

/// Gamma(z). Lanczos for Re z >= 1/2, reflection formula otherwise. The
/// sqrt(2 pi) normalization lives inside the rational sum.
inline Complex gamma(Complex z) {
  detail::require_off_pole(z);
  if (z.real() >= 0.5) {
    const Complex t = z + detail::kLanczosG - 0.5;
    return std::pow(t, z - 0.5) * std::exp(-t) * detail::lanczos_sum(z);
  }
  // Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
}

/// log Gamma(z) with exp(log_gamma(z)) == gamma(z); the imaginary part may
/// differ from the analytic continuation by a multiple of 2*pi, which cancels
/// in the Gamma-product quotients this is used for.
inline Complex log_gamma(Complex z) {
  detail::require_off_pole(z);
  if (z.real() >= 0.5) {
    const Complex t = z + detail::kLanczosG - 0.5;
    return (z - 0.5) * std::log(t) - t + std::log(detail::lanczos_sum(z));
  }
  return std::log(Complex{kPi, 0.0}) - std::log(std::sin(kPi * z)) -
         log_gamma(1.0 - z);
}

/// 1/Gamma(z); zero at the poles of Gamma (entire function).
inline Complex reciprocal_gamma(Complex z) {
  if (dist_to_nonpositive_integer(z) < 1e-12) return Complex{0.0, 0.0};
  return 1.0 / gamma(z);
}

/// Parameter triple of 2F1(a, b; c; z). c must stay away from the
/// non-positive integers, where the Gauss series is undefined.
struct Hyp2F1Params {
  Complex a, b, c;

  Hyp2F1Params(Complex a_, Complex b_, Complex c_) : a(a_), b(b_), c(c_) {
    if (dist_to_nonpositive_integer(c) < 1e-12) {
      throw ParameterError("hyp2f1: c within 1e-12 of a non-positive integer");
    }
  }
};

namespace detail {

inline constexpr double kSeriesTol = 1e-15;
inline constexpr int kSeriesCap = 20000;

// Raw Gauss series sum_{n} (a)_n (b)_n / ((c)_n n!) z^n. Terminates when two
// consecutive terms fall below kSeriesTol relative to the running sum.
inline Complex gauss_series(Complex a, Complex b, Complex c, double z,
                            int max_terms) {
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  int small_streak = 0;
  for (int n = 0; n < max_terms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum)) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "hyp2f1 series did not converge in %d terms (z = %.6g)",
                max_terms, z);
  throw ConvergenceError(buf);
}

}  // namespace detail

/// Truncated Gauss series with no transformations. Oracle path for
/// cross-checking the transformed evaluation.
inline Complex hyp2f1_series(const Hyp2F1Params& p, double z, int max_terms) {
  if (z < 0.0 || z >= 1.0) throw DomainError("hyp2f1_series: z outside [0, 1)");
  if (z == 0.0) return Complex{1.0, 0.0};
  return detail::gauss_series(p.a, p.b, p.c, z, max_terms);
}

/// 2F1(a, b; c; z) for real z in [0, 1), with the complement 1 - z supplied
/// exactly by the caller. For z within rounding distance of 1 the naive
/// 1.0 - z loses all relative accuracy, which would wreck the z -> 1-z
/// connection branch; callers that know the complement (e.g. evaluating at
/// v = 1 - e^{-x}) pass it here. Direct series for z <= 1/2; the two-series
/// connection formula otherwise. When c - a - b is within 1e-8 of an integer
/// the connection degenerates (logarithmic case) and an error is raised
/// instead of a silently inaccurate value.
inline Complex hyp2f1_cm(const Hyp2F1Params& p, double z, double one_minus_z) {
  if (z < 0.0 || !(one_minus_z > 0.0)) throw DomainError("hyp2f1: z outside [0, 1)");
  if (z == 0.0) return Complex{1.0, 0.0};
  if (z <= 0.5) return detail::gauss_series(p.a, p.b, p.c, z, detail::kSeriesCap);

  const Complex d = p.c - p.a - p.b;
  if (dist_to_integer(d) < 1e-8) {
    throw DegenerateConnectionError(
        "hyp2f1: c - a - b within 1e-8 of an integer; logarithmic connection "
        "case not implemented");
  }
  const double s = one_minus_z;
  // Both denominators go through 1/Gamma so that a pole there correctly
  // annihilates its term.
  const Complex coeff1 = gamma(p.c) * gamma(d) * reciprocal_gamma(p.c - p.a) *
                         reciprocal_gamma(p.c - p.b);
  const Complex coeff2 = gamma(p.c) * gamma(-d) * reciprocal_gamma(p.a) *
                         reciprocal_gamma(p.b);
  const Complex f1 =
      detail::gauss_series(p.a, p.b, p.a + p.b + 1.0 - p.c, s, detail::kSeriesCap);
  const Complex f2 = detail::gauss_series(p.c - p.a, p.c - p.b, d + 1.0, s,
                                          detail::kSeriesCap);
  return coeff1 * f1 + coeff2 * cpow_pos(s, d) * f2;
}

inline Complex hyp2f1(const Hyp2F1Params& p, double z) {
  if (z >= 1.0) throw DomainError("hyp2f1: z outside [0, 1)");
  return hyp2f1_cm(p, z, 1.0 - z);
}

/// d/dz 2F1(a, b; c; z) = (a b / c) 2F1(a+1, b+1; c+1; z).
inline Complex hyp2f1_derivative_cm(const Hyp2F1Params& p, double z,
                                    double one_minus_z) {
  const Hyp2F1Params shifted{p.a + 1.0, p.b + 1.0, p.c + 1.0};
  return p.a * p.b / p.c * hyp2f1_cm(shifted, z, one_minus_z);
}

inline Complex hyp2f1_derivative(const Hyp2F1Params& p, double z) {
  if (z >= 1.0) throw DomainError("hyp2f1_derivative: z outside [0, 1)");
  return hyp2f1_derivative_cm(p, z, 1.0 - z);
}

}  // namespace ces::special

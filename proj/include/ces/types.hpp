#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ces {

/// Universal scalar of the library. All special functions, solutions and
/// amplitudes are complex-valued; real quantities use plain double.
using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Branch selector of the partner pair V+/V-.
enum class Sign { plus, minus };

/// Fundamental-system label: the two linearly independent solutions around z = 0.
enum class Branch { I, II };

/// Coordinate tag for samples: x on the half line, z = e^{-x}, v = 1 - z.
enum class Coordinate { x, z, v };

inline double sign_factor(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

inline const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }
inline const char* to_string(Branch b) { return b == Branch::I ? "I" : "II"; }
inline const char* to_string(Coordinate c) {
  switch (c) {
    case Coordinate::x: return "x";
    case Coordinate::z: return "z";
    default: return "v";
  }
}

/// (coordinate, value, derivative) triple; the derivative is taken with
/// respect to the tagged coordinate.
struct SolutionSample {
  Coordinate coord_tag = Coordinate::x;
  double coord = 0.0;
  Complex value{};
  Complex derivative{};
};

// ---------------------------------------------------------------------------
// Error types. Preconditions are enforced by throwing; no silent clamping.

/// Argument outside the physical domain (x <= 0, z outside (0,1), ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Invalid construction parameters (m = 0, omega <= 0, bad grids, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation too close to a Gamma pole (non-positive integer argument).
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Series or integrator failed to reach the requested accuracy.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// c - a - b within tolerance of an integer: the two-series connection
/// formula degenerates and the logarithmic limit is not implemented.
struct DegenerateConnectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Asymptotic fit rejected: ill-conditioned solve or inconsistent samples.
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_finite(Complex w) {
  return std::isfinite(w.real()) && std::isfinite(w.imag());
}

}  // namespace ces

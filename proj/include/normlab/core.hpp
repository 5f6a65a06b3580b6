#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace normlab {

/// Thrown when a caller violates a documented precondition (bad vector,
/// malformed space description, out-of-range parameter, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is well posed but outside what this library
/// computes exactly (e.g. an exact face of a curved unit ball).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Comparison tolerances used throughout. All comparisons against these are
/// relative to the natural scale of the quantities involved unless a function
/// documents otherwise.
struct ToleranceConfig {
  double tau_face = 1e-9;    ///< tie detection when collecting an argmax face
  double tau_norm = 1e-9;    ///< relative slack for norm-level comparisons
  double tau_strict = 1e-9;  ///< margin required of strict inequalities
  double tau_vertex = 1e-9;  ///< vertex coincidence / symmetry matching

  void validate() const {
    for (double t : {tau_face, tau_norm, tau_strict, tau_vertex}) {
      if (!(t > 0.0) || !(t < 1e-2)) {
        throw InputError("tolerance out of range (0, 1e-2): " +
                         std::to_string(t));
      }
    }
  }

  /// Uniform override used by the CLI --tol flag.
  static ToleranceConfig uniform(double tau) {
    ToleranceConfig cfg{tau, tau, tau, tau};
    cfg.validate();
    return cfg;
  }
};

/// Conjugate exponent q with 1/p + 1/q = 1; maps 1 <-> infinity.
inline double conjugate_exponent(double p) {
  if (p == 1.0) return kInfinity;
  if (p == kInfinity) return 1.0;
  return p / (p - 1.0);
}

/// p in [1, inf] as accepted for every exponent parameter in the library.
inline void require_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw InputError("exponent p must lie in [1, inf]");
  }
}

}  // namespace normlab

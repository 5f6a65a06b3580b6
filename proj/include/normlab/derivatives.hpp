#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "normlab/core.hpp"
#include "normlab/space.hpp"
#include "normlab/support.hpp"
#include "normlab/vec.hpp"

namespace normlab {

/// One-sided directional derivatives of the norm at x toward y:
/// rho_plus = ||x|| sup{f(y) : f in J(x)}, rho_minus with inf.
struct DerivativePair {
  Vector x, y;
  double rho_plus = 0.0;
  double rho_minus = 0.0;
};

inline DerivativePair rho(const Space& space, const Vector& x, const Vector& y,
                          const ToleranceConfig& tol = {}) {
  require_point(space, y);
  const SupportFace face = support_set(space, x, tol);
  double hi = -kInfinity, lo = kInfinity;
  for (const auto& f : face.vertices) {
    const double v = f(y);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return {x, y, face.attained_value * hi, face.attained_value * lo};
}

/// Which difference quotient rho_numeric evaluates. The squared form is the
/// (||x+ly||^2 - ||x||^2) / 2l quotient and carries an O(l) bias; the linear
/// form ||x|| (||x+ly|| - ||x||) / l is exact for polyhedral norms once |l|
/// is below the nearest facet breakpoint.
enum class QuotientForm { squared, linear };

inline double rho_numeric(const Space& space, const Vector& x, const Vector& y,
                          double lambda,
                          QuotientForm form = QuotientForm::squared) {
  detail::require_nonzero_point(space, x);
  require_point(space, y);
  if (!(std::abs(lambda) > 0.0) || std::abs(lambda) > 1e-3) {
    throw InputError("lambda must satisfy 0 < |lambda| <= 1e-3");
  }
  const double nx = norm(space, x);
  const double nl = norm(space, x + lambda * y);
  if (form == QuotientForm::squared) {
    return (nl * nl - nx * nx) / (2.0 * lambda);
  }
  return nx * (nl - nx) / lambda;
}

/// Runs the linear-form quotient over a shrinking lambda schedule on both
/// sides and reports whether the estimates behave like a converging
/// sequence (successive corrections must not grow).
struct NumericDerivativeCheck {
  std::array<double, 3> lambdas{1e-4, 1e-5, 1e-6};
  std::array<double, 3> plus_estimates{};
  std::array<double, 3> minus_estimates{};
  bool consistent = false;

  double rho_plus() const { return plus_estimates.back(); }
  double rho_minus() const { return minus_estimates.back(); }
};

inline NumericDerivativeCheck rho_numeric_schedule(
    const Space& space, const Vector& x, const Vector& y,
    const ToleranceConfig& tol = {}) {
  NumericDerivativeCheck out;
  for (size_t k = 0; k < out.lambdas.size(); ++k) {
    out.plus_estimates[k] =
        rho_numeric(space, x, y, out.lambdas[k], QuotientForm::linear);
    out.minus_estimates[k] =
        rho_numeric(space, x, y, -out.lambdas[k], QuotientForm::linear);
  }
  const auto converging = [&](const std::array<double, 3>& e) {
    double scale = 1.0;
    for (double v : e) scale = std::max(scale, std::abs(v));
    return std::abs(e[2] - e[1]) <= std::abs(e[1] - e[0]) + tol.tau_norm * scale;
  };
  out.consistent =
      converging(out.plus_estimates) && converging(out.minus_estimates);
  return out;
}

/// sup over unit y of rho_plus(x,y) - rho_minus(x,y), evaluated exactly as
/// ||x|| max over face-vertex pairs of ||f - g|| in the dual norm (the sup
/// of (f-g)(y) over the unit sphere is that dual norm).
inline double smoothness_gap(const Space& space, const Vector& x,
                             const ToleranceConfig& tol = {}) {
  const SupportFace face = support_set(space, x, tol);
  return face.attained_value * face_diameter(space, face.vertices);
}

}  // namespace normlab

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "normlab/core.hpp"
#include "normlab/derivatives.hpp"
#include "normlab/space.hpp"
#include "normlab/support.hpp"
#include "normlab/vec.hpp"

namespace normlab {

struct OrthogonalityReport {
  Vector x, y;
  bool is_bj = false;
  double eps_min = 0.0;       // least eps with x approximately orthogonal to y
  Functional witness;         // face element attaining eps_min
};

enum class Verdict { pass, fail, vacuous };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
  }
  return "?";
}

/// Right-additivity diagnostics for a triple (x, y1, y2): the three
/// sufficient conditions under which approximate orthogonality to y1 and y2
/// transfers to y1 + y2, each with its own hypothesis window and verdict.
struct AdditivityReport {
  Vector x, y1, y2;
  double eps_x = 0.0;    // diam J(x)
  double eps_y1 = 0.0;   // eps_min(x, y1)
  double eps_y2 = 0.0;
  double eps_out = 0.0;  // eps_min(x, y1 + y2)
  double window_42 = 0.0;  // 2||y1+y2|| / 3(||y1||+||y2||)
  double window_43 = 0.0;  // 2||y1+y2|| / (||y1||+||y2||)
  bool hyp_42 = false, hyp_43 = false, hyp_46 = false;
  Verdict verdict_42 = Verdict::vacuous;
  Verdict verdict_43 = Verdict::vacuous;
  Verdict verdict_46 = Verdict::vacuous;
};

/// x is orthogonal to y precisely when some f in J(x) kills y, i.e. when
/// f(y) changes sign (or vanishes) over the face: the rho pair brackets 0.
inline bool is_bj_orthogonal(const Space& space, const Vector& x,
                             const Vector& y, const ToleranceConfig& tol = {}) {
  tol.validate();
  detail::require_nonzero_point(space, x);
  require_point(space, y);
  if (y.is_zero()) return true;
  const DerivativePair d = rho(space, x, y, tol);
  const double slack = tol.tau_norm * norm(space, x) * norm(space, y);
  return d.rho_minus <= slack && d.rho_plus >= -slack;
}

namespace detail {

struct EpsMinResult {
  double eps = 0.0;
  Functional witness;
};

inline EpsMinResult eps_min_with_witness(const Space& space, const Vector& x,
                                         const Vector& y,
                                         const ToleranceConfig& tol) {
  const SupportFace face = support_set(space, x, tol);
  if (y.is_zero()) return {0.0, face.vertices.front()};
  const double ny = norm(space, y);

  size_t lo_at = 0, hi_at = 0;
  double lo = kInfinity, hi = -kInfinity;
  for (size_t i = 0; i < face.vertices.size(); ++i) {
    const double v = face.vertices[i](y);
    if (v < lo) lo = v, lo_at = i;
    if (v > hi) hi = v, hi_at = i;
  }
  if (lo <= 0.0 && hi >= 0.0) {
    // f(y) changes sign across the face, so some convex combination kills y.
    // That combination stays on the face, hence on the dual sphere.
    const double t = hi - lo > 0.0 ? hi / (hi - lo) : 0.0;
    const Functional w =
        (1.0 - t) * face.vertices[hi_at] + t * face.vertices[lo_at];
    return {0.0, w};
  }
  size_t best = 0;
  double eps = kInfinity;
  for (size_t i = 0; i < face.vertices.size(); ++i) {
    const double v = std::abs(face.vertices[i](y)) / ny;
    if (v < eps) eps = v, best = i;
  }
  return {std::min(eps, 1.0), face.vertices[best]};
}

}  // namespace detail

/// Least eps >= 0 such that x is approximately orthogonal to y at level eps:
/// min over f in J(x) of |f(y)| / ||y||. Zero when f(y) changes sign over
/// the face (convexity gives an exact zero inside); otherwise the minimum of
/// a sign-constant linear function over the face sits at a vertex.
inline double eps_min(const Space& space, const Vector& x, const Vector& y,
                      const ToleranceConfig& tol = {}) {
  tol.validate();
  detail::require_nonzero_point(space, x);
  require_point(space, y);
  return detail::eps_min_with_witness(space, x, y, tol).eps;
}

inline OrthogonalityReport orthogonality_report(const Space& space,
                                                const Vector& x,
                                                const Vector& y,
                                                const ToleranceConfig& tol = {}) {
  tol.validate();
  detail::require_nonzero_point(space, x);
  require_point(space, y);
  const auto r = detail::eps_min_with_witness(space, x, y, tol);
  OrthogonalityReport out;
  out.x = x;
  out.y = y;
  out.eps_min = r.eps;
  out.witness = r.witness;
  out.is_bj = is_bj_orthogonal(space, x, y, tol);
  return out;
}

/// Checks ||x + l y||^2 >= ||x||^2 - 2 eps ||x|| ||l y|| at every grid
/// point, with tau_norm ||x||^2 slack. A necessary condition for
/// eps-orthogonality at the grid resolution.
inline bool check_def_inequality(const Space& space, const Vector& x,
                                 const Vector& y, double eps,
                                 std::span<const double> lambda_grid,
                                 const ToleranceConfig& tol = {}) {
  tol.validate();
  detail::require_nonzero_point(space, x);
  require_point(space, y);
  if (!(eps >= 0.0) || eps >= 1.0) {
    throw InputError("eps must lie in [0, 1)");
  }
  if (lambda_grid.empty()) throw InputError("lambda grid is empty");
  std::vector<double> sorted(lambda_grid.begin(), lambda_grid.end());
  std::sort(sorted.begin(), sorted.end());
  double scale = std::max(std::abs(sorted.front()), std::abs(sorted.back()));
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (std::abs(sorted[i] + sorted[sorted.size() - 1 - i]) > 1e-12 * scale) {
      throw InputError("lambda grid must be symmetric around 0");
    }
  }
  if (y.is_zero()) return true;
  const double nx = norm(space, x);
  const double ny = norm(space, y);
  for (double lambda : sorted) {
    const double lhs = norm(space, x + lambda * y);
    const double rhs =
        nx * nx - 2.0 * eps * nx * std::abs(lambda) * ny;
    if (lhs * lhs < rhs - tol.tau_norm * nx * nx) return false;
  }
  return true;
}

inline AdditivityReport additivity_report(const Space& space, const Vector& x,
                                          const Vector& y1, const Vector& y2,
                                          const ToleranceConfig& tol = {}) {
  tol.validate();
  detail::require_nonzero_point(space, x);
  require_point(space, y1);
  require_point(space, y2);

  AdditivityReport r;
  r.x = x, r.y1 = y1, r.y2 = y2;
  r.eps_x = diam_support(space, x, tol);
  r.eps_y1 = eps_min(space, x, y1, tol);
  r.eps_y2 = eps_min(space, x, y2, tol);
  const Vector sum = y1 + y2;
  r.eps_out = eps_min(space, x, sum, tol);

  const double n1 = norm(space, y1), n2 = norm(space, y2);
  const double ns = norm(space, sum);
  const bool sum_nonzero = !sum.is_zero();
  if (sum_nonzero && n1 + n2 > 0.0) {
    r.window_42 = 2.0 * ns / (3.0 * (n1 + n2));
    r.window_43 = 2.0 * ns / (n1 + n2);
  }

  // A common eps in [0, window) must dominate eps_x and both eps_min values.
  r.hyp_42 = sum_nonzero &&
             std::max({r.eps_y1, r.eps_y2, r.eps_x}) < r.window_42;
  r.hyp_43 = sum_nonzero && is_bj_orthogonal(space, x, y1, tol) &&
             is_bj_orthogonal(space, x, y2, tol) && r.eps_x < r.window_43;
  r.hyp_46 = is_bj_orthogonal(space, x, y1, tol) &&
             is_bj_orthogonal(space, x, y2, tol) &&
             std::min(n1, n2) <=
                 norm(space, 0.5 * sum) + tol.tau_norm * std::max(n1, n2);

  const auto lenient = [&](bool hyp) {
    return !hyp ? Verdict::vacuous
                : (r.eps_out < 1.0 ? Verdict::pass : Verdict::fail);
  };
  r.verdict_42 = lenient(r.hyp_42);
  r.verdict_43 = lenient(r.hyp_43);
  r.verdict_46 = !r.hyp_46
                     ? Verdict::vacuous
                     : (r.eps_out <= r.eps_x / 2.0 + tol.tau_norm
                            ? Verdict::pass
                            : Verdict::fail);
  return r;
}

/// Checks whether (y1, y2) witnesses the failure of right-additivity of
/// approximate orthogonality at x: each y_i escapes the absolute-attainment
/// set of some face vertex, yet the normalized sum attains |f| = 1 for every
/// face vertex. Both y_i must be unit vectors; a zero sum returns false.
inline bool lemma44_check(const Space& space, const Vector& x,
                          const Vector& y1, const Vector& y2,
                          const ToleranceConfig& tol = {}) {
  tol.validate();
  detail::require_nonzero_point(space, x);
  require_point(space, y1);
  require_point(space, y2);
  for (const Vector* y : {&y1, &y2}) {
    if (std::abs(norm(space, *y) - 1.0) > tol.tau_norm) {
      throw InputError("witness directions must be unit vectors");
    }
  }
  const Vector sum = y1 + y2;
  if (sum.is_zero()) return false;
  const SupportFace face = support_set(space, x, tol);
  const Vector u = (1.0 / norm(space, sum)) * sum;

  bool escapes1 = false, escapes2 = false;
  for (const auto& f : face.vertices) {
    escapes1 = escapes1 || std::abs(f(y1)) < 1.0 - tol.tau_norm;
    escapes2 = escapes2 || std::abs(f(y2)) < 1.0 - tol.tau_norm;
    if (std::abs(f(u)) < 1.0 - tol.tau_norm) return false;
  }
  return escapes1 && escapes2;
}

}  // namespace normlab

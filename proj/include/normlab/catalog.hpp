#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "normlab/core.hpp"
#include "normlab/polytope.hpp"
#include "normlab/space.hpp"
#include "normlab/support.hpp"
#include "normlab/vec.hpp"

namespace normlab {

/// Regular 2n-gon unit ball with vertices on the Euclidean unit circle:
/// x_k = (cos((k-1)pi/n), sin((k-1)pi/n)) for k = 1..2n. The facet
/// supporting functionals have the closed form
/// f_k = sec(pi/2n) (cos((2k-1)pi/2n), sin((2k-1)pi/2n)).
struct RegularPolygonSpace {
  int n = 0;
  Space space;

  Vector vertex(int k) const {
    const double a = (k - 1) * std::numbers::pi / n;
    return Vector{std::cos(a), std::sin(a)};
  }

  Functional facet_functional(int k) const {
    const double a = (2 * k - 1) * std::numbers::pi / (2 * n);
    const double sec = 1.0 / std::cos(std::numbers::pi / (2 * n));
    return Functional{sec * std::cos(a), sec * std::sin(a)};
  }
};

inline RegularPolygonSpace regular_polygon_space(int n,
                                                 const ToleranceConfig& tol = {}) {
  if (n < 2) throw InputError("regular polygon needs n >= 2");
  std::vector<Vector> pts;
  for (int k = 1; k <= n; ++k) {
    const double a = (k - 1) * std::numbers::pi / n;
    const Vector v{std::cos(a), std::sin(a)};
    pts.push_back(v);
    pts.push_back(-v);  // exact reflection, keeps the set exactly symmetric
  }
  RegularPolygonSpace out;
  out.n = n;
  out.space = Space::polyhedral(PolyhedralBall::from_vertices(pts, tol), tol);
  return out;
}

/// Largest diam J(x) over the regular 2n-gon, in closed form:
/// 2 tan(pi/2n) for even n, 2 tan(pi/2n) sin((n-1)pi/2n) for odd n.
inline double closed_form_E(int n) {
  if (n < 2) throw InputError("regular polygon needs n >= 2");
  const double t = 2.0 * std::tan(std::numbers::pi / (2 * n));
  if (n % 2 == 0) return t;
  return t * std::sin((n - 1) * std::numbers::pi / (2 * n));
}

/// The hexagonal family conv{(1,1), (0,1+delta), (-1,1)} (and reflections):
/// a square with two antipodal spikes of height delta. The apex (0, 1+delta)
/// has diam J = 2 delta / (1+delta), so the family sweeps every degree of
/// approximate smoothness as delta grows.
inline Space example31_space(double delta, const ToleranceConfig& tol = {}) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InputError("delta must be a positive real");
  }
  const std::vector<Vector> pts{Vector{1.0, 1.0},   Vector{0.0, 1.0 + delta},
                                Vector{-1.0, 1.0},  Vector{-1.0, -1.0},
                                Vector{0.0, -1.0 - delta}, Vector{1.0, -1.0}};
  return Space::polyhedral(PolyhedralBall::from_vertices(pts, tol), tol);
}

inline Vector example31_apex(double delta) { return Vector{0.0, 1.0 + delta}; }

inline double example31_apex_diam(double delta) {
  return 2.0 * delta / (1.0 + delta);
}

/// The reals with |.| — the 1-dimensional building block for prisms.
inline Space real_line_space() { return Space::lp(kInfinity, 1); }

inline Space direct_sum_space(double p, const Space& left, const Space& right) {
  return Space::direct_sum(p, left, right);
}

/// Right prism over the regular 2n-gon: polygon (+)_inf R.
inline Space prism_space(int n, const ToleranceConfig& tol = {}) {
  return Space::direct_sum(kInfinity, regular_polygon_space(n, tol).space,
                           real_line_space());
}

/// support_set of a p-sum computed blockwise from the summand faces, case by
/// case, instead of via the composed polytope.
struct DirectSumSupport {
  SupportFace face;
  /// Set for the max-sum norm tie ||x_L|| = ||x_R||: the blockwise case
  /// analysis only bounds the face from below there, so the face is taken
  /// from the composed polytope instead.
  bool inclusion_only = false;
};

inline DirectSumSupport direct_sum_support(const Space& space, const Vector& xy,
                                           const ToleranceConfig& tol = {}) {
  tol.validate();
  if (space.kind() != Space::Kind::direct_sum) {
    throw InputError("direct_sum_support needs a direct_sum space");
  }
  detail::require_nonzero_point(space, xy);
  const Space left = space.left(), right = space.right();
  const auto [xl, xr] = split(xy, left.dim());
  const double p = space.p();

  DirectSumSupport out;
  out.face.x = xy;
  out.face.attained_value = norm(space, xy);

  if (p > 1.0 && p < kInfinity) {
    out.face = detail::direct_sum_face_interior_p(space, xy, tol);
    return out;
  }

  const auto dual_ball_vertices = [&](const Space& s) {
    // Extreme points of the dual ball = facet functionals of the primal.
    std::vector<Functional> fs;
    for (const auto& f : s.ball().facets()) fs.push_back(f.normal);
    return fs;
  };

  if (p == 1.0) {
    // Every pair (f, g) with f attaining on the left block and g on the
    // right supports the sum; a zero block frees its factor to the whole
    // dual ball.
    const std::vector<Functional> fs =
        xl.is_zero() ? dual_ball_vertices(left)
                     : support_set(left, xl, tol).vertices;
    const std::vector<Functional> gs =
        xr.is_zero() ? dual_ball_vertices(right)
                     : support_set(right, xr, tol).vertices;
    for (const auto& f : fs) {
      for (const auto& g : gs) out.face.vertices.push_back(join(f, g));
    }
    return out;
  }

  // p = inf: the dominant block carries the face; the other block's
  // component is forced to zero. A tie needs the composed polytope.
  const double nl = norm(left, xl), nr = norm(right, xr);
  if (std::abs(nl - nr) <= tol.tau_norm * std::max(nl, nr)) {
    out.inclusion_only = true;
    out.face = support_set(space, xy, tol);
    return out;
  }
  if (nl > nr) {
    const Functional zr = detail::zero_functional(right.dim());
    for (const auto& f : support_set(left, xl, tol).vertices) {
      out.face.vertices.push_back(join(f, zr));
    }
  } else {
    const Functional zl = detail::zero_functional(left.dim());
    for (const auto& g : support_set(right, xr, tol).vertices) {
      out.face.vertices.push_back(join(zl, g));
    }
  }
  return out;
}

}  // namespace normlab

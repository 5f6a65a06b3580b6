#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "normlab/core.hpp"
#include "normlab/space.hpp"
#include "normlab/vec.hpp"

namespace normlab {

/// The set J(x) of norm-one functionals attaining ||x|| at x, represented by
/// the extreme points of that face of the dual unit ball.
struct SupportFace {
  Vector x;
  double attained_value = 0.0;  // = ||x||
  std::vector<Functional> vertices;
};

struct SmoothnessReport {
  Vector x;
  double eps = 0.0;  // diam J(x)
  bool is_smooth = false;
  bool is_approx_smooth = false;
};

/// The three global constants of a space: E = sup_x diam J(x), S = sup over
/// supporting functionals of the diameter of the attaining face of the
/// sphere, R = length of the longest segment contained in the sphere.
struct SpaceConstants {
  double E = 0.0;
  double S = 0.0;
  double R = 0.0;
};

namespace detail {

inline void require_nonzero_point(const Space& space, const Vector& x) {
  require_point(space, x);
  if (x.is_zero()) {
    throw InputError("supporting functionals are undefined at the origin");
  }
}

inline Functional zero_functional(int dim) {
  return Functional(std::vector<double>(static_cast<size_t>(dim), 0.0));
}

SupportFace support_set_impl(const Space& space, const Vector& x,
                             const ToleranceConfig& tol);

/// Face of a p-sum with 1 < p < infinity: every extreme functional is
/// (a f, b g) with f, g extreme in the summand faces and weights
/// a = (||x_L|| / ||x||)^{p-1}, b = (||x_R|| / ||x||)^{p-1}; a zero block
/// contributes weight 0 and no factor.
inline SupportFace direct_sum_face_interior_p(const Space& space,
                                              const Vector& x,
                                              const ToleranceConfig& tol) {
  const Space left = space.left(), right = space.right();
  const auto [xl, xr] = split(x, left.dim());
  const double p = space.p();
  const double nl = norm(left, xl);
  const double nr = norm(right, xr);
  const double nz = p_combine(nl, nr, p);

  SupportFace out;
  out.x = x;
  out.attained_value = nz;
  if (xl.is_zero()) {
    const Functional zl = zero_functional(left.dim());
    for (const auto& g : support_set_impl(right, xr, tol).vertices) {
      out.vertices.push_back(join(zl, g));
    }
    return out;
  }
  if (xr.is_zero()) {
    const Functional zr = zero_functional(right.dim());
    for (const auto& f : support_set_impl(left, xl, tol).vertices) {
      out.vertices.push_back(join(f, zr));
    }
    return out;
  }
  const double a = std::pow(nl / nz, p - 1.0);
  const double b = std::pow(nr / nz, p - 1.0);
  const auto fl = support_set_impl(left, xl, tol);
  const auto fr = support_set_impl(right, xr, tol);
  for (const auto& f : fl.vertices) {
    for (const auto& g : fr.vertices) {
      out.vertices.push_back(join(a * f, b * g));
    }
  }
  return out;
}

inline SupportFace support_set_impl(const Space& space, const Vector& x,
                                    const ToleranceConfig& tol) {
  if (space.representable()) {
    const auto& facets = space.ball().facets();
    double m = 0.0;
    for (const auto& f : facets) m = std::max(m, f.normal(x));
    SupportFace out;
    out.x = x;
    out.attained_value = m;
    for (const auto& f : facets) {
      if (f.normal(x) >= (1.0 - tol.tau_face) * m) {
        out.vertices.push_back(f.normal);
      }
    }
    return out;
  }
  if (space.kind() == Space::Kind::lp) {
    const double p = space.p();
    const double nx = norm(space, x);
    std::vector<double> f(x.coords().size());
    for (size_t i = 0; i < f.size(); ++i) {
      const double xi = x.coords()[i];
      f[i] = (xi < 0.0 ? -1.0 : 1.0) * std::pow(std::abs(xi) / nx, p - 1.0);
    }
    SupportFace out;
    out.x = x;
    out.attained_value = nx;
    out.vertices.push_back(Functional(std::move(f)));
    return out;
  }
  // Non-representable direct sum. The interior-exponent face formula covers
  // 1 < p < infinity; p in {1, inf} with a curved summand has no finite
  // extreme-point description of the needed dual pieces.
  if (space.p() > 1.0 && space.p() < kInfinity) {
    return direct_sum_face_interior_p(space, x, tol);
  }
  throw CapabilityError(
      "support set for a 1- or max-sum requires polyhedral summands");
}

}  // namespace detail

/// Extreme points of J(x). Requires x != 0. Exact for representable spaces
/// (argmax over the dual-ball vertices), analytic for lp with 1 < p < inf,
/// and composed blockwise for p-sums with 1 < p < inf.
inline SupportFace support_set(const Space& space, const Vector& x,
                               const ToleranceConfig& tol = {}) {
  tol.validate();
  detail::require_nonzero_point(space, x);
  return detail::support_set_impl(space, x, tol);
}

/// Largest pairwise dual-norm distance among the given functionals.
inline double face_diameter(const Space& space,
                            const std::vector<Functional>& fs) {
  double d = 0.0;
  for (size_t i = 0; i < fs.size(); ++i) {
    for (size_t j = i + 1; j < fs.size(); ++j) {
      d = std::max(d, dual_norm(space, fs[i] - fs[j]));
    }
  }
  return d;
}

/// diam J(x) in the dual norm; 0 at smooth points.
inline double diam_support(const Space& space, const Vector& x,
                           const ToleranceConfig& tol = {}) {
  return face_diameter(space, support_set(space, x, tol).vertices);
}

inline SmoothnessReport smoothness_report(const Space& space, const Vector& x,
                                          const ToleranceConfig& tol = {}) {
  SmoothnessReport r;
  r.x = x;
  r.eps = diam_support(space, x, tol);
  r.is_smooth = r.eps <= tol.tau_norm;
  r.is_approx_smooth = r.eps <= 2.0 - tol.tau_strict;
  return r;
}

/// E, S and R for a representable space. E maximizes diam J(x) over ball
/// vertices (faces elsewhere are subsets of vertex faces); S maximizes the
/// face diameter over supporting facet functionals; R is the same sphere
/// quantity recomputed from the incidence table. S = R always; both are kept
/// as separate code paths on purpose.
inline SpaceConstants space_constants(const Space& space,
                                      const ToleranceConfig& tol = {}) {
  tol.validate();
  const PolyhedralBall& ball = space.ball();
  SpaceConstants out;
  for (const auto& v : ball.vertices()) {
    out.E = std::max(out.E, diam_support(space, v, tol));
  }
  for (const auto& facet : ball.facets()) {
    const auto face = face_of_ball(space, facet.normal, tol);
    double d = 0.0;
    for (size_t i = 0; i < face.size(); ++i) {
      for (size_t j = i + 1; j < face.size(); ++j) {
        d = std::max(d, norm(space, face[i] - face[j]));
      }
    }
    out.S = std::max(out.S, d);

    double r = 0.0;
    for (size_t i = 0; i < facet.incident.size(); ++i) {
      for (size_t j = i + 1; j < facet.incident.size(); ++j) {
        r = std::max(r, norm(space, ball.vertex(facet.incident[i]) -
                                        ball.vertex(facet.incident[j])));
      }
    }
    out.R = std::max(out.R, r);
  }
  return out;
}

}  // namespace normlab

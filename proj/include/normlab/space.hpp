#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "normlab/core.hpp"
#include "normlab/polytope.hpp"
#include "normlab/vec.hpp"

namespace normlab {

namespace detail {

inline double p_norm(const std::vector<double>& c, double p) {
  if (p == kInfinity) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : c) s += std::abs(v);
    return s;
  }
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : c) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

/// ||(a, b)||_p for nonnegative a, b, guarded against overflow.
inline double p_combine(double a, double b, double p) {
  if (p == kInfinity) return std::max(a, b);
  if (p == 1.0) return a + b;
  const double m = std::max(a, b);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(a / m, p) + std::pow(b / m, p), 1.0 / p);
}

}  // namespace detail

/// A finite-dimensional real normed space. Three kinds are supported:
///  - polyhedral: the norm whose unit ball is a given PolyhedralBall,
///  - lp: R^d with the p-norm, p in [1, inf],
///  - direct_sum: X (+)_p Y, the p-combination of two member spaces.
///
/// A space is "representable" when its unit ball is available as an exact
/// polytope; all face-enumeration operations require that. Norm and dual
/// norm evaluation work for every kind.
///
/// Space is an immutable value type; copies share the underlying data.
class Space {
 public:
  enum class Kind { polyhedral, lp, direct_sum };

  Space() = default;

  static Space polyhedral(PolyhedralBall ball, const ToleranceConfig& tol = {}) {
    ball.validate(tol);
    auto d = std::make_shared<Data>();
    d->kind = Kind::polyhedral;
    d->dim = ball.dim();
    d->ball = std::move(ball);
    return Space(std::move(d));
  }

  static Space lp(double p, int dim) {
    require_exponent(p);
    if (dim < 1) throw InputError("space dimension must be at least 1");
    auto d = std::make_shared<Data>();
    d->kind = Kind::lp;
    d->dim = dim;
    d->p = p;
    if (dim == 1) {
      d->ball = PolyhedralBall::segment();  // every p-norm on R is |.|
    } else if (p == 1.0) {
      d->ball = PolyhedralBall::cross_polytope(dim);
    } else if (p == kInfinity) {
      d->ball = PolyhedralBall::cube(dim);
    }
    return Space(std::move(d));
  }

  static Space direct_sum(double p, Space left, Space right) {
    require_exponent(p);
    left.require_init(), right.require_init();
    auto d = std::make_shared<Data>();
    d->kind = Kind::direct_sum;
    d->dim = left.dim() + right.dim();
    d->p = p;
    if (left.representable() && right.representable()) {
      if (p == kInfinity) {
        d->ball = PolyhedralBall::product(left.ball(), right.ball());
      } else if (p == 1.0) {
        d->ball = PolyhedralBall::free_sum(left.ball(), right.ball());
      }
    }
    d->left = left.data_;
    d->right = right.data_;
    return Space(std::move(d));
  }

  Kind kind() const { return require_init().kind; }
  int dim() const { return require_init().dim; }

  double p() const {
    const Data& d = require_init();
    if (d.kind == Kind::polyhedral) {
      throw InputError("p is defined for lp and direct_sum spaces only");
    }
    return d.p;
  }

  Space left() const { return Space(require_sum().left); }
  Space right() const { return Space(require_sum().right); }

  /// True when the exact unit-ball polytope is available.
  bool representable() const { return require_init().ball.has_value(); }

  const PolyhedralBall& ball() const {
    const Data& d = require_init();
    if (!d.ball) {
      throw CapabilityError(
          "unit ball is not polyhedral; exact face enumeration unavailable");
    }
    return *d.ball;
  }

 private:
  struct Data {
    Kind kind = Kind::polyhedral;
    int dim = 0;
    double p = 0.0;
    std::optional<PolyhedralBall> ball;
    std::shared_ptr<const Data> left, right;
  };

  explicit Space(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  const Data& require_init() const {
    if (!data_) throw InputError("space is not initialized");
    return *data_;
  }

  const Data& require_sum() const {
    const Data& d = require_init();
    if (d.kind != Kind::direct_sum) {
      throw InputError("summands are defined for direct_sum spaces only");
    }
    return d;
  }

  std::shared_ptr<const Data> data_;
};

inline void require_point(const Space& space, const Vector& x) {
  if (x.dim() != space.dim()) {
    throw InputError("vector dimension does not match the space");
  }
}

inline void require_functional(const Space& space, const Functional& f) {
  if (f.dim() != space.dim()) {
    throw InputError("functional dimension does not match the space");
  }
}

/// The norm of x in the given space.
inline double norm(const Space& space, const Vector& x) {
  require_point(space, x);
  switch (space.kind()) {
    case Space::Kind::lp:
      return detail::p_norm(x.coords(), space.p());
    case Space::Kind::polyhedral: {
      double m = 0.0;
      for (const auto& f : space.ball().facets()) {
        m = std::max(m, f.normal(x));
      }
      return m;
    }
    case Space::Kind::direct_sum: {
      const auto [xl, xr] = split(x, space.left().dim());
      return detail::p_combine(norm(space.left(), xl),
                               norm(space.right(), xr), space.p());
    }
  }
  throw InputError("space is not initialized");
}

/// The dual norm ||f||_{X*} = max{f(x) : ||x|| <= 1}.
inline double dual_norm(const Space& space, const Functional& f) {
  require_functional(space, f);
  switch (space.kind()) {
    case Space::Kind::lp:
      return detail::p_norm(f.coords(), conjugate_exponent(space.p()));
    case Space::Kind::polyhedral: {
      double m = 0.0;
      for (const auto& v : space.ball().vertices()) m = std::max(m, f(v));
      return m;
    }
    case Space::Kind::direct_sum: {
      const auto [fl, fr] = split(f, space.left().dim());
      return detail::p_combine(dual_norm(space.left(), fl),
                               dual_norm(space.right(), fr),
                               conjugate_exponent(space.p()));
    }
  }
  throw InputError("space is not initialized");
}

/// The unit ball of the dual space, as an exact polytope. Requires a
/// representable space.
inline PolyhedralBall polar(const Space& space) {
  return space.ball().polar();
}

/// Vertices of the face of the unit ball on which f attains its maximum.
/// Exact (vertex enumeration) for representable spaces; the analytic single
/// norming point for lp with 1 < p < infinity.
inline std::vector<Vector> face_of_ball(const Space& space, const Functional& f,
                                        const ToleranceConfig& tol = {}) {
  tol.validate();
  require_functional(space, f);
  if (f.is_zero()) throw InputError("functional must be nonzero");
  if (space.representable()) {
    const auto& verts = space.ball().vertices();
    double m = 0.0;
    for (const auto& v : verts) m = std::max(m, f(v));
    std::vector<Vector> face;
    for (const auto& v : verts) {
      if (f(v) >= (1.0 - tol.tau_face) * m) face.push_back(v);
    }
    return face;
  }
  if (space.kind() == Space::Kind::lp) {
    const double p = space.p();
    const double q = conjugate_exponent(p);
    const double nf = detail::p_norm(f.coords(), q);
    std::vector<double> x(f.coords().size());
    for (size_t i = 0; i < x.size(); ++i) {
      const double fi = f.coords()[i];
      x[i] = (fi < 0.0 ? -1.0 : 1.0) * std::pow(std::abs(fi) / nf, q - 1.0);
    }
    return {Vector(std::move(x))};
  }
  throw CapabilityError(
      "face enumeration for non-representable direct sums is not supported");
}

}  // namespace normlab

#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "normlab/core.hpp"

namespace normlab {

namespace detail {

/// Shared coordinate-tuple machinery for Vector and Functional. The two are
/// kept as distinct strong types so that elements of a space and elements of
/// its dual cannot be mixed up silently.
template <class Derived>
class CoordTuple {
 public:
  CoordTuple() = default;

  explicit CoordTuple(std::vector<double> coords) : coords_(std::move(coords)) {
    for (double c : coords_) {
      if (!std::isfinite(c)) throw InputError("coordinates must be finite");
    }
  }

  CoordTuple(std::initializer_list<double> coords)
      : CoordTuple(std::vector<double>(coords)) {}

  int dim() const { return static_cast<int>(coords_.size()); }
  bool empty() const { return coords_.empty(); }

  double operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return coords_[static_cast<size_t>(i)]; }

  const std::vector<double>& coords() const { return coords_; }

  bool is_zero() const {
    for (double c : coords_) {
      if (c != 0.0) return false;
    }
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m;
  }

  friend Derived operator+(const Derived& a, const Derived& b) {
    return combine(a, b, +1.0);
  }
  friend Derived operator-(const Derived& a, const Derived& b) {
    return combine(a, b, -1.0);
  }
  friend Derived operator*(double s, const Derived& a) {
    std::vector<double> out(a.coords_);
    for (double& c : out) c *= s;
    return Derived(std::move(out));
  }
  friend Derived operator-(const Derived& a) { return -1.0 * a; }

  friend bool operator==(const Derived& a, const Derived& b) {
    return a.coords_ == b.coords_;
  }

  /// Max-coordinate distance; the measure used for vertex coincidence tests.
  friend double coord_distance(const Derived& a, const Derived& b) {
    if (a.dim() != b.dim()) throw InputError("dimension mismatch");
    double d = 0.0;
    for (int i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
  }

  /// Splits into leading/trailing blocks, used by direct sums.
  friend std::pair<Derived, Derived> split(const Derived& a, int left_dim) {
    if (left_dim <= 0 || left_dim >= a.dim()) {
      throw InputError("split point must be interior to the tuple");
    }
    std::vector<double> l(a.coords_.begin(), a.coords_.begin() + left_dim);
    std::vector<double> r(a.coords_.begin() + left_dim, a.coords_.end());
    return {Derived(std::move(l)), Derived(std::move(r))};
  }

  friend Derived join(const Derived& a, const Derived& b) {
    std::vector<double> out(a.coords_);
    out.insert(out.end(), b.coords_.begin(), b.coords_.end());
    return Derived(std::move(out));
  }

 private:
  static Derived combine(const Derived& a, const Derived& b, double sign) {
    if (a.dim() != b.dim()) throw InputError("dimension mismatch");
    std::vector<double> out(a.coords_);
    for (int i = 0; i < b.dim(); ++i) out[static_cast<size_t>(i)] += sign * b[i];
    return Derived(std::move(out));
  }

  std::vector<double> coords_;
};

}  // namespace detail

/// Element of a space X, written in coordinates of the ambient R^d.
class Vector : public detail::CoordTuple<Vector> {
 public:
  using detail::CoordTuple<Vector>::CoordTuple;
};

/// Element of the dual X*, acting on vectors by the standard pairing.
class Functional : public detail::CoordTuple<Functional> {
 public:
  using detail::CoordTuple<Functional>::CoordTuple;

  double operator()(const Vector& x) const {
    if (dim() != x.dim()) throw InputError("dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += (*this)[i] * x[i];
    return s;
  }
};

inline Vector to_vector(const Functional& f) { return Vector(f.coords()); }
inline Functional to_functional(const Vector& x) { return Functional(x.coords()); }

}  // namespace normlab

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "normlab/core.hpp"
#include "normlab/vec.hpp"

namespace normlab {

namespace detail {

inline double cross2(double ox, double oy, double ax, double ay, double bx,
                     double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

/// Rank of a small dense matrix via Gaussian elimination with partial
/// pivoting; pivots below rel_tol * (largest input entry) count as zero.
inline int matrix_rank(std::vector<std::vector<double>> rows, double rel_tol) {
  if (rows.empty()) return 0;
  const int n_rows = static_cast<int>(rows.size());
  const int n_cols = static_cast<int>(rows[0].size());
  double scale = 0.0;
  for (const auto& r : rows)
    for (double v : r) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double threshold = rel_tol * scale;

  int rank = 0;
  for (int col = 0; col < n_cols && rank < n_rows; ++col) {
    int pivot = rank;
    for (int r = rank + 1; r < n_rows; ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) <= threshold) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < n_rows; ++r) {
      const double m = rows[r][col] / rows[rank][col];
      for (int c = col; c < n_cols; ++c) rows[r][c] -= m * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// One facet of the unit ball: the supporting functional, normalized so the
/// facet lies in {x : normal(x) = 1}, plus the indices of incident vertices.
struct Facet {
  Functional normal;
  std::vector<int> incident;
};

/// A centrally symmetric polytope with nonempty interior, stored in both
/// vertex and facet form together with their incidence relation. Instances
/// are unit balls of polyhedral norms.
///
/// Invariants maintained by every construction path (and re-checked by
/// validate()):
///  - the vertex set is symmetric and every listed vertex is extreme,
///  - facet functionals satisfy normal(v) <= 1 for all vertices, with
///    equality exactly on the incident list,
///  - every facet has at least dim() incident vertices,
///  - in dimension 2 the vertices are in counterclockwise angular order and
///    facet k joins vertices k and k+1 (cyclically).
class PolyhedralBall {
 public:
  PolyhedralBall() = default;

  int dim() const { return dim_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int facet_count() const { return static_cast<int>(facets_.size()); }

  const std::vector<Vector>& vertices() const { return vertices_; }
  const Vector& vertex(int i) const { return vertices_[static_cast<size_t>(i)]; }
  const std::vector<Facet>& facets() const { return facets_; }
  const Facet& facet(int j) const { return facets_[static_cast<size_t>(j)]; }

  /// Indices of the facets through vertex i (the transpose of the incidence).
  const std::vector<int>& facets_of_vertex(int i) const {
    return vertex_facets_[static_cast<size_t>(i)];
  }

  /// Builds a ball from an unordered symmetric point set. Dimensions 1 and 2
  /// are supported; interior and duplicate points are discarded. Points are
  /// first symmetrized in matched pairs so the stored set is exactly
  /// symmetric.
  static PolyhedralBall from_vertices(const std::vector<Vector>& points,
                                      const ToleranceConfig& tol = {}) {
    if (points.empty()) throw InputError("vertex list is empty");
    const int d = points[0].dim();
    for (const auto& p : points) {
      if (p.dim() != d) throw InputError("vertex dimensions are inconsistent");
    }
    if (d == 1) return from_vertices_1d(points, tol);
    if (d == 2) return from_vertices_2d(points, tol);
    throw CapabilityError(
        "vertex-set input is supported in dimensions 1 and 2 only; higher "
        "dimensions must be built from cube/cross_polytope/product/free_sum");
  }

  /// The interval [-1, 1], unit ball of the reals.
  static PolyhedralBall segment() {
    PolyhedralBall b;
    b.dim_ = 1;
    b.vertices_ = {Vector{1.0}, Vector{-1.0}};
    b.facets_ = {Facet{Functional{1.0}, {0}}, Facet{Functional{-1.0}, {1}}};
    b.finish();
    return b;
  }

  /// [-1,1]^d, the max-norm unit ball.
  static PolyhedralBall cube(int d) {
    check_enumeration_dim(d);
    if (d == 1) return segment();
    if (d == 2) {
      return from_vertices(
          {Vector{1.0, 1.0}, Vector{-1.0, 1.0}, Vector{-1.0, -1.0},
           Vector{1.0, -1.0}});
    }
    PolyhedralBall b;
    b.dim_ = d;
    const int n = 1 << d;
    for (int mask = 0; mask < n; ++mask) {
      std::vector<double> c(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = (mask >> i) & 1 ? 1.0 : -1.0;
      b.vertices_.emplace_back(std::move(c));
    }
    for (int i = 0; i < d; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> h(static_cast<size_t>(d), 0.0);
        h[static_cast<size_t>(i)] = sign;
        Facet f{Functional(std::move(h)), {}};
        for (int mask = 0; mask < n; ++mask) {
          const bool bit = (mask >> i) & 1;
          if (bit == (sign > 0.0)) f.incident.push_back(mask);
        }
        b.facets_.push_back(std::move(f));
      }
    }
    b.finish();
    return b;
  }

  /// conv{±e_i}, the sum-norm unit ball.
  static PolyhedralBall cross_polytope(int d) {
    check_enumeration_dim(d);
    if (d == 1) return segment();
    if (d == 2) {
      return from_vertices({Vector{1.0, 0.0}, Vector{0.0, 1.0},
                            Vector{-1.0, 0.0}, Vector{0.0, -1.0}});
    }
    PolyhedralBall b;
    b.dim_ = d;
    for (int i = 0; i < d; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> c(static_cast<size_t>(d), 0.0);
        c[static_cast<size_t>(i)] = sign;
        b.vertices_.emplace_back(std::move(c));
      }
    }
    const int n = 1 << d;
    for (int mask = 0; mask < n; ++mask) {
      std::vector<double> h(static_cast<size_t>(d));
      Facet f{Functional{}, {}};
      for (int i = 0; i < d; ++i) {
        const bool plus = (mask >> i) & 1;
        h[static_cast<size_t>(i)] = plus ? 1.0 : -1.0;
        f.incident.push_back(2 * i + (plus ? 0 : 1));
      }
      f.normal = Functional(std::move(h));
      b.facets_.push_back(std::move(f));
    }
    b.finish();
    return b;
  }

  /// Cartesian product A x B: the unit ball of the max-combination of the two
  /// norms. Vertices are all pairs; facets come from either factor.
  static PolyhedralBall product(const PolyhedralBall& a,
                                const PolyhedralBall& b) {
    require_nonempty(a), require_nonempty(b);
    if (static_cast<long long>(a.vertex_count()) * b.vertex_count() >
        kMaxEnumeration) {
      throw CapabilityError("product ball has too many vertices to enumerate");
    }
    PolyhedralBall out;
    out.dim_ = a.dim_ + b.dim_;
    for (const auto& u : a.vertices_)
      for (const auto& v : b.vertices_) out.vertices_.push_back(join(u, v));
    const auto pair_index = [&](int i, int j) {
      return i * b.vertex_count() + j;
    };
    const Functional zero_a(std::vector<double>(static_cast<size_t>(a.dim_), 0.0));
    const Functional zero_b(std::vector<double>(static_cast<size_t>(b.dim_), 0.0));
    for (const auto& f : a.facets_) {
      Facet g{join(f.normal, zero_b), {}};
      for (int i : f.incident)
        for (int j = 0; j < b.vertex_count(); ++j)
          g.incident.push_back(pair_index(i, j));
      out.facets_.push_back(std::move(g));
    }
    for (const auto& f : b.facets_) {
      Facet g{join(zero_a, f.normal), {}};
      for (int i = 0; i < a.vertex_count(); ++i)
        for (int j : f.incident) g.incident.push_back(pair_index(i, j));
      out.facets_.push_back(std::move(g));
    }
    if (out.dim_ == 2) return from_vertices(out.vertices_);
    out.finish();
    return out;
  }

  /// Free sum (convex hull of the two balls embedded in complementary
  /// blocks): the unit ball of the sum-combination of the two norms.
  static PolyhedralBall free_sum(const PolyhedralBall& a,
                                 const PolyhedralBall& b) {
    require_nonempty(a), require_nonempty(b);
    if (static_cast<long long>(a.facet_count()) * b.facet_count() >
        kMaxEnumeration) {
      throw CapabilityError("free sum has too many facets to enumerate");
    }
    PolyhedralBall out;
    out.dim_ = a.dim_ + b.dim_;
    const Vector zero_a(std::vector<double>(static_cast<size_t>(a.dim_), 0.0));
    const Vector zero_b(std::vector<double>(static_cast<size_t>(b.dim_), 0.0));
    for (const auto& u : a.vertices_) out.vertices_.push_back(join(u, zero_b));
    for (const auto& v : b.vertices_) out.vertices_.push_back(join(zero_a, v));
    for (const auto& fa : a.facets_) {
      for (const auto& fb : b.facets_) {
        Facet g{join(fa.normal, fb.normal), {}};
        g.incident = fa.incident;
        for (int j : fb.incident) g.incident.push_back(a.vertex_count() + j);
        out.facets_.push_back(std::move(g));
      }
    }
    if (out.dim_ == 2) return from_vertices(out.vertices_);
    out.finish();
    return out;
  }

  /// The polar ball {f : f(x) <= 1 on this ball}. For a unit ball of X this
  /// is the unit ball of X*. Pure exchange of the two representations: polar
  /// vertices are this ball's facet functionals and vice versa, with the
  /// incidence transposed, so no arithmetic is performed.
  PolyhedralBall polar() const {
    require_nonempty(*this);
    PolyhedralBall out;
    out.dim_ = dim_;
    out.vertices_.reserve(facets_.size());
    for (const auto& f : facets_) out.vertices_.emplace_back(f.normal.coords());
    const int n = vertex_count();
    for (int i = 0; i < n; ++i) {
      // In 2D, facet k of the polar must join its vertices k and k+1; that
      // facet is the transpose of this ball's vertex k+1.
      const int src = dim_ == 2 ? (i + 1) % n : i;
      out.facets_.push_back(
          Facet{Functional(vertices_[static_cast<size_t>(src)].coords()),
                vertex_facets_[static_cast<size_t>(src)]});
    }
    out.finish();
    return out;
  }

  /// Checks every structural invariant; throws InputError on violation.
  void validate(const ToleranceConfig& tol = {}) const {
    tol.validate();
    if (dim_ < 1) throw InputError("ball dimension must be at least 1");
    if (vertex_count() < 2 || facet_count() < 2) {
      throw InputError("ball needs at least two vertices and two facets");
    }
    double scale = 0.0;
    for (const auto& v : vertices_) {
      if (v.dim() != dim_) throw InputError("vertex dimension mismatch");
      scale = std::max(scale, v.max_abs());
    }
    if (scale <= 0.0) throw InputError("ball has empty interior");
    for (const auto& v : vertices_) {
      bool matched = false;
      for (const auto& w : vertices_) {
        if (coord_distance(v, -w) <= tol.tau_vertex * scale) {
          matched = true;
          break;
        }
      }
      if (!matched) throw InputError("vertex set is not symmetric");
    }
    std::vector<std::vector<int>> tight_at(vertices_.size());
    for (int j = 0; j < facet_count(); ++j) {
      const Facet& f = facets_[static_cast<size_t>(j)];
      if (f.normal.dim() != dim_) throw InputError("facet dimension mismatch");
      if (f.normal.max_abs() == 0.0) throw InputError("facet normal is zero");
      if (static_cast<int>(f.incident.size()) < dim_) {
        throw InputError("facet has fewer incident vertices than dim");
      }
      for (int i = 0; i < vertex_count(); ++i) {
        const double val = f.normal(vertices_[static_cast<size_t>(i)]);
        if (val > 1.0 + tol.tau_face) {
          throw InputError("vertex lies outside a facet halfspace");
        }
        const bool tight = std::abs(val - 1.0) <= tol.tau_face;
        const bool listed = std::find(f.incident.begin(), f.incident.end(),
                                      i) != f.incident.end();
        if (tight != listed) {
          throw InputError("facet incidence list disagrees with geometry");
        }
        if (tight) tight_at[static_cast<size_t>(i)].push_back(j);
      }
    }
    for (int i = 0; i < vertex_count(); ++i) {
      std::vector<std::vector<double>> rows;
      for (int j : tight_at[static_cast<size_t>(i)]) {
        rows.push_back(facets_[static_cast<size_t>(j)].normal.coords());
      }
      if (detail::matrix_rank(rows, tol.tau_face) < dim_) {
        throw InputError("listed vertex is not an extreme point");
      }
    }
    if (dim_ == 2) validate_planar_order(tol);
  }

 private:
  static constexpr long long kMaxEnumeration = 1 << 16;

  static void check_enumeration_dim(int d) {
    if (d < 1) throw InputError("dimension must be at least 1");
    if (d > 16) throw CapabilityError("dimension too large to enumerate");
  }

  static void require_nonempty(const PolyhedralBall& b) {
    if (b.dim_ < 1) throw InputError("ball is not initialized");
  }

  static PolyhedralBall from_vertices_1d(const std::vector<Vector>& points,
                                         const ToleranceConfig& tol) {
    tol.validate();
    double radius = 0.0;
    for (const auto& p : points) radius = std::max(radius, std::abs(p[0]));
    if (radius <= 0.0) throw InputError("ball has empty interior");
    double hi = -kInfinity, lo = kInfinity;
    for (const auto& p : points) hi = std::max(hi, p[0]), lo = std::min(lo, p[0]);
    if (std::abs(hi + lo) > tol.tau_vertex * radius) {
      throw InputError("vertex set is not symmetric");
    }
    const double a = (hi - lo) / 2.0;
    PolyhedralBall b;
    b.dim_ = 1;
    b.vertices_ = {Vector{a}, Vector{-a}};
    b.facets_ = {Facet{Functional{1.0 / a}, {0}},
                 Facet{Functional{-1.0 / a}, {1}}};
    b.finish();
    return b;
  }

  /// Symmetrize, deduplicate and take the convex hull (monotone chain); the
  /// hull is produced in counterclockwise order.
  static PolyhedralBall from_vertices_2d(std::vector<Vector> pts,
                                         const ToleranceConfig& tol) {
    tol.validate();
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, p.max_abs());
    if (scale <= 0.0) throw InputError("ball has empty interior");
    const double match_tol = tol.tau_vertex * scale;

    // Drop duplicates first: the reflection pairing below is a one-to-one
    // matching, which a repeated point would starve of its partner.
    std::vector<Vector> distinct;
    for (const auto& p : pts) {
      bool dup = false;
      for (const auto& q : distinct) {
        if (coord_distance(p, q) <= match_tol) {
          dup = true;
          break;
        }
      }
      if (!dup) distinct.push_back(p);
    }

    // Pair every point with its reflection and replace the pair by an exact
    // (r, -r) couple so downstream symmetry is exact.
    std::vector<bool> used(distinct.size(), false);
    std::vector<Vector> sym;
    for (size_t i = 0; i < distinct.size(); ++i) {
      if (used[i]) continue;
      size_t best = i;
      double best_dist = kInfinity;
      for (size_t j = i; j < distinct.size(); ++j) {
        if (used[j] && j != i) continue;
        const double d = coord_distance(distinct[i], -distinct[j]);
        if (d < best_dist) best_dist = d, best = j;
      }
      if (best_dist > match_tol) {
        throw InputError("vertex set is not symmetric");
      }
      used[i] = used[best] = true;
      const Vector r = 0.5 * (distinct[i] - distinct[best]);
      if (r.max_abs() <= match_tol) continue;  // the origin, never a vertex
      sym.push_back(r);
      sym.push_back(-r);
    }

    std::vector<Vector> uniq;
    for (const auto& p : sym) {
      bool dup = false;
      for (const auto& q : uniq) {
        if (coord_distance(p, q) <= match_tol) {
          dup = true;
          break;
        }
      }
      if (!dup) uniq.push_back(p);
    }
    std::sort(uniq.begin(), uniq.end(), [](const Vector& a, const Vector& b) {
      return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });

    const double area_tol = tol.tau_face * scale * scale;
    const auto build = [&](auto begin, auto end, std::vector<Vector>& chain) {
      for (auto it = begin; it != end; ++it) {
        while (chain.size() >= 2 &&
               detail::cross2(chain[chain.size() - 2][0],
                              chain[chain.size() - 2][1], chain.back()[0],
                              chain.back()[1], (*it)[0],
                              (*it)[1]) <= area_tol) {
          chain.pop_back();
        }
        chain.push_back(*it);
      }
    };
    std::vector<Vector> lower, upper;
    build(uniq.begin(), uniq.end(), lower);
    build(uniq.rbegin(), uniq.rend(), upper);
    lower.pop_back();
    upper.pop_back();
    std::vector<Vector> hull(std::move(lower));
    hull.insert(hull.end(), upper.begin(), upper.end());
    if (hull.size() < 4) {
      throw InputError("vertex set does not span the plane");
    }

    PolyhedralBall b;
    b.dim_ = 2;
    b.vertices_ = std::move(hull);
    const int n = b.vertex_count();
    for (int k = 0; k < n; ++k) {
      const Vector& u = b.vertices_[static_cast<size_t>(k)];
      const Vector& v = b.vertices_[static_cast<size_t>((k + 1) % n)];
      const double det = u[0] * v[1] - u[1] * v[0];
      if (det <= area_tol) {
        throw InputError("unit ball must contain the origin in its interior");
      }
      Functional h{(v[1] - u[1]) / det, (u[0] - v[0]) / det};
      b.facets_.push_back(Facet{std::move(h), {k, (k + 1) % n}});
    }
    b.finish();
    return b;
  }

  void validate_planar_order(const ToleranceConfig& tol) const {
    const int n = vertex_count();
    if (facet_count() != n) {
      throw InputError("planar ball must have equally many facets as vertices");
    }
    for (int k = 0; k < n; ++k) {
      const Vector& u = vertices_[static_cast<size_t>(k)];
      const Vector& v = vertices_[static_cast<size_t>((k + 1) % n)];
      if (u[0] * v[1] - u[1] * v[0] <= 0.0) {
        throw InputError("planar vertices must be in counterclockwise order");
      }
      std::vector<int> inc = facets_[static_cast<size_t>(k)].incident;
      std::sort(inc.begin(), inc.end());
      std::vector<int> expect{k, (k + 1) % n};
      std::sort(expect.begin(), expect.end());
      if (inc != expect) {
        throw InputError("planar facet k must join vertices k and k+1");
      }
    }
    (void)tol;
  }

  /// Derives the vertex->facet adjacency once vertices_/facets_ are final.
  void finish() {
    vertex_facets_.assign(vertices_.size(), {});
    for (int j = 0; j < facet_count(); ++j) {
      auto& inc = facets_[static_cast<size_t>(j)].incident;
      std::sort(inc.begin(), inc.end());
      for (int i : inc) vertex_facets_[static_cast<size_t>(i)].push_back(j);
    }
  }

  int dim_ = 0;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<int>> vertex_facets_;
};

}  // namespace normlab

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "normlab/core.hpp"
#include "normlab/polytope.hpp"
#include "normlab/space.hpp"
#include "normlab/vec.hpp"

namespace normlab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Independent substream seed for trial `index` of a run seeded with `seed`;
/// lets suites replay any single trial from its dossier.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return detail::splitmix64(s);
}

/// Deterministic generator: identical seeds give identical streams on every
/// platform (mt19937_64 is pinned by the standard; the float conversions and
/// the normal transform below avoid libstdc++-specific distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic points on the unit sphere of a space.
struct SampleSet {
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<Vector> points;
};

/// Samples the unit sphere. For 2D representable spaces the points are
/// stratified uniformly by perimeter arc length (with a seeded common
/// offset), so consecutive samples are at most perimeter/count apart — the
/// property the sampled-supremum error bounds rely on. Other spaces get
/// normalized Gaussian directions.
inline SampleSet sphere_points(const Space& space, std::uint64_t seed,
                               int count) {
  if (count < 1) throw InputError("sample count must be positive");
  SampleSet out;
  out.seed = seed;
  out.count = count;
  out.points.reserve(static_cast<size_t>(count));
  Rng rng(seed);

  if (space.dim() == 2 && space.representable()) {
    const auto& verts = space.ball().vertices();
    const int n = static_cast<int>(verts.size());
    std::vector<double> cumulative(static_cast<size_t>(n) + 1, 0.0);
    for (int k = 0; k < n; ++k) {
      const Vector e = verts[static_cast<size_t>((k + 1) % n)] - verts[static_cast<size_t>(k)];
      cumulative[static_cast<size_t>(k) + 1] =
          cumulative[static_cast<size_t>(k)] + std::hypot(e[0], e[1]);
    }
    const double perimeter = cumulative.back();
    const double offset = rng.uniform();
    int edge = 0;
    for (int i = 0; i < count; ++i) {
      const double s = perimeter * (i + offset) / count;
      while (cumulative[static_cast<size_t>(edge) + 1] < s) ++edge;
      const double t = (s - cumulative[static_cast<size_t>(edge)]) /
                       (cumulative[static_cast<size_t>(edge) + 1] -
                        cumulative[static_cast<size_t>(edge)]);
      const Vector& a = verts[static_cast<size_t>(edge)];
      const Vector& b = verts[static_cast<size_t>((edge + 1) % n)];
      out.points.push_back((1.0 - t) * a + t * b);
    }
    return out;
  }

  const int d = space.dim();
  while (static_cast<int>(out.points.size()) < count) {
    std::vector<double> c(static_cast<size_t>(d));
    for (double& v : c) v = rng.normal();
    Vector x(std::move(c));
    const double n = norm(space, x);
    if (n < 1e-9) continue;
    out.points.push_back((1.0 / n) * x);
  }
  return out;
}

/// Random symmetric polygon: m angles in (0, pi) with radii in [0.5, 2],
/// reflected through the origin and hull-reduced, so every stored vertex is
/// extreme. Deterministic in (seed, m). The rare draw whose hull degenerates
/// (near-collinear points) is discarded and redrawn from the same stream.
inline Space random_polygon(std::uint64_t seed, int m,
                            const ToleranceConfig& tol = {}) {
  if (m < 2) throw InputError("random polygon needs m >= 2");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> angles(static_cast<size_t>(m));
    for (double& a : angles) a = rng.uniform(0.0, std::numbers::pi);
    std::sort(angles.begin(), angles.end());
    std::vector<Vector> pts;
    for (double a : angles) {
      const double r = rng.uniform(0.5, 2.0);
      const Vector v{r * std::cos(a), r * std::sin(a)};
      pts.push_back(v);
      pts.push_back(-v);
    }
    try {
      return Space::polyhedral(PolyhedralBall::from_vertices(pts, tol), tol);
    } catch (const InputError&) {
      continue;
    }
  }
  throw InputError("random polygon generation failed to converge");
}

}  // namespace normlab

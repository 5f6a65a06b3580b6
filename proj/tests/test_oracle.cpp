#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "normlab/catalog.hpp"
#include "normlab/derivatives.hpp"
#include "normlab/orthogonality.hpp"
#include "normlab/sampling.hpp"
#include "normlab/verify.hpp"

using Catch::Approx;
using namespace normlab;

TEST_CASE("sphere sampling is deterministic in the seed", "[oracle][sampling]") {
  const Space hex = regular_polygon_space(3).space;
  const SampleSet a = sphere_points(hex, 42, 100);
  const SampleSet b = sphere_points(hex, 42, 100);
  REQUIRE(a.seed == 42);
  REQUIRE(a.count == 100);
  REQUIRE(a.points.size() == 100);
  for (size_t i = 0; i < a.points.size(); ++i) {
    REQUIRE(coord_distance(a.points[i], b.points[i]) == 0.0);
  }
  const SampleSet c = sphere_points(hex, 43, 100);
  REQUIRE(coord_distance(a.points[0], c.points[0]) > 0.0);
}

TEST_CASE("sampled points lie on the unit sphere", "[oracle][sampling]") {
  const Space hex = regular_polygon_space(3).space;
  for (const auto& y : sphere_points(hex, 7, 64).points) {
    REQUIRE(norm(hex, y) == Approx(1.0).margin(1e-12));
  }
  // non-representable spaces fall back to normalized gaussian directions
  const Space l2 = Space::lp(2.0, 3);
  const SampleSet g = sphere_points(l2, 7, 50);
  REQUIRE(g.points.size() == 50);
  for (const auto& y : g.points) {
    REQUIRE(y.dim() == 3);
    REQUIRE(norm(l2, y) == Approx(1.0).margin(1e-12));
  }
  const SampleSet g2 = sphere_points(l2, 7, 50);
  for (size_t i = 0; i < g.points.size(); ++i) {
    REQUIRE(coord_distance(g.points[i], g2.points[i]) == 0.0);
  }
  REQUIRE_THROWS_AS(sphere_points(hex, 1, 0), InputError);
}

TEST_CASE("random polygons are symmetric, extreme, and self-dual-dual",
          "[oracle][sampling]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Space rp = random_polygon(seed, 6);
    const PolyhedralBall& ball = rp.ball();
    REQUIRE_NOTHROW(ball.validate());
    for (const auto& v : ball.vertices()) {
      bool has_negation = false;
      for (const auto& w : ball.vertices()) {
        if (coord_distance(-v, w) <= 1e-12) has_negation = true;
      }
      REQUIRE(has_negation);
    }
    const SpaceConstants c = space_constants(rp);
    REQUIRE(c.S == c.R);

    const PolyhedralBall bipolar = ball.polar().polar();
    REQUIRE(bipolar.vertex_count() == ball.vertex_count());
    for (const auto& v : ball.vertices()) {
      bool found = false;
      for (const auto& w : bipolar.vertices()) {
        if (coord_distance(v, w) <= 1e-12) found = true;
      }
      REQUIRE(found);
    }
  }
  const Space a = random_polygon(11, 7);
  const Space b = random_polygon(11, 7);
  REQUIRE(a.ball().vertex_count() == b.ball().vertex_count());
  for (int i = 0; i < a.ball().vertex_count(); ++i) {
    REQUIRE(coord_distance(a.ball().vertices()[static_cast<size_t>(i)],
                           b.ball().vertices()[static_cast<size_t>(i)]) == 0.0);
  }
}

TEST_CASE("support faces survive the sampling audit", "[oracle][audit]") {
  const Space square = Space::lp(kInfinity, 2);
  REQUIRE(verify_support_by_sampling(square, Vector{1.0, 1.0}, 200, 3));
  REQUIRE(verify_support_by_sampling(square, Vector{1.0, 0.25}, 200, 3));
  const Space hex = regular_polygon_space(3).space;
  REQUIRE(verify_support_by_sampling(hex, Vector{1.0, 0.0}, 200, 3));
  REQUIRE(verify_support_by_sampling(Space::lp(2.0, 2), Vector{3.0, 4.0}, 200, 3));
}

TEST_CASE("quadratic inequality threshold matches eps_min", "[oracle][audit]") {
  const Space square = Space::lp(kInfinity, 2);
  const Vector x{1.0, 1.0};
  const Vector y{1.0, 0.25};
  REQUIRE(eps_min(square, x, y) == Approx(0.25).margin(1e-12));
  REQUIRE(verify_eq2_vs_epsmin(square, x, y, 64));

  const Space b1 = example31_space(1.0);
  REQUIRE(eps_min(b1, example31_apex(1.0), Vector{1.0, 1.0}) ==
          Approx(0.0).margin(1e-12));
  REQUIRE(verify_eq2_vs_epsmin(b1, example31_apex(1.0), Vector{1.0, 1.0}, 64));

  const Space l2 = Space::lp(2.0, 2);
  const double r = 1.0 / std::numbers::sqrt2;
  REQUIRE(eps_min(l2, Vector{1.0, 0.0}, Vector{r, r}) ==
          Approx(0.7071067811865475).margin(1e-12));
  REQUIRE(verify_eq2_vs_epsmin(l2, Vector{1.0, 0.0}, Vector{r, r}, 64));

  REQUIRE_THROWS_AS(verify_eq2_vs_epsmin(square, x, Vector{0.0, 0.0}, 64),
                    InputError);
}

TEST_CASE("sampled smoothness gap approaches the exact gap", "[oracle][audit]") {
  const Space hex = regular_polygon_space(3).space;
  const Vector x{1.0, 0.0};
  const double exact = smoothness_gap(hex, x);
  REQUIRE(exact == Approx(1.0).margin(1e-12));
  const double sampled = smoothness_gap_sampled(hex, x, 10000, 5);
  REQUIRE(sampled <= exact + 1e-12);
  REQUIRE(sampled >= exact - 1e-3);
}

TEST_CASE("suite registry and argument validation", "[oracle][suites]") {
  REQUIRE(suite_names().size() == 13);
  REQUIRE(suite_default_trials("derivative_numeric") == 900);
  REQUIRE(suite_default_trials("bipolar") == 50);
  REQUIRE_THROWS_AS(run_suite("no_such_suite", 1, 10), InputError);
  REQUIRE_THROWS_AS(run_suite("norm_axioms", 1, 0), InputError);
}

TEST_CASE("every suite passes a short run", "[oracle][suites]") {
  for (const auto& name : suite_names()) {
    const SuiteResult r = run_suite(name, 0x5eedULL, 20);
    INFO(name << ": " << (r.failures.empty() ? "" : r.failures[0].message));
    REQUIRE(r.name == name);
    REQUIRE(r.trials == 20);
    REQUIRE(r.passed());
  }
}

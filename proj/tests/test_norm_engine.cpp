#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "normlab/catalog.hpp"
#include "normlab/space.hpp"

using Catch::Approx;
using namespace normlab;

TEST_CASE("lp norms hit closed forms", "[norm][lp]") {
  const Vector v{1.0, -2.0, 3.0};
  REQUIRE(norm(Space::lp(1.0, 3), v) == Approx(6.0).margin(1e-14));
  REQUIRE(norm(Space::lp(kInfinity, 3), v) == Approx(3.0).margin(1e-14));
  REQUIRE(norm(Space::lp(2.0, 2), Vector{3.0, 4.0}) == Approx(5.0).margin(1e-14));
  REQUIRE(norm(Space::lp(1.5, 3), v) ==
          Approx(4.334622872113609).margin(1e-12));
}

TEST_CASE("lp norm is safe against overflow", "[norm][lp]") {
  const double big = 1e200;
  const double n = norm(Space::lp(3.0, 2), Vector{big, big});
  REQUIRE(std::isfinite(n));
  REQUIRE(n == Approx(big * std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("invalid exponents and dimensions are rejected", "[norm][errors]") {
  REQUIRE_THROWS_AS(Space::lp(0.5, 2), InputError);
  REQUIRE_THROWS_AS(Space::lp(std::nan(""), 2), InputError);
  REQUIRE_THROWS_AS(Space::lp(2.0, 0), InputError);
  REQUIRE_THROWS_AS(norm(Space::lp(2.0, 2), Vector{1.0, 2.0, 3.0}), InputError);
}

TEST_CASE("conjugate exponents pair up", "[norm][lp]") {
  REQUIRE(conjugate_exponent(1.0) == kInfinity);
  REQUIRE(conjugate_exponent(kInfinity) == 1.0);
  REQUIRE(conjugate_exponent(2.0) == Approx(2.0));
  REQUIRE(conjugate_exponent(1.5) == Approx(3.0));
  REQUIRE(conjugate_exponent(3.0) == Approx(1.5));
}

TEST_CASE("polyhedral norm is the Minkowski functional", "[norm][polyhedral]") {
  const Space diamond = Space::polyhedral(PolyhedralBall::cross_polytope(2));
  REQUIRE(norm(diamond, Vector{1.0, 2.0}) == Approx(3.0).margin(1e-14));
  const Space square = Space::polyhedral(PolyhedralBall::cube(2));
  REQUIRE(norm(square, Vector{1.0, 2.0}) == Approx(2.0).margin(1e-14));
  REQUIRE(norm(square, Vector{0.0, 0.0}) == 0.0);

  const Space hexagon = regular_polygon_space(3).space;
  REQUIRE(norm(hexagon, Vector{1.0, 0.0}) == Approx(1.0).margin(1e-14));
  REQUIRE(norm(hexagon, Vector{0.0, 1.0}) ==
          Approx(1.1547005383792517).margin(1e-12));
}

TEST_CASE("dual norm is the support function of the ball", "[norm][dual]") {
  const Space diamond = Space::polyhedral(PolyhedralBall::cross_polytope(2));
  REQUIRE(dual_norm(diamond, Functional{1.0, 1.0}) == Approx(1.0).margin(1e-14));
  REQUIRE(dual_norm(diamond, Functional{2.0, -3.0}) == Approx(3.0).margin(1e-14));

  REQUIRE(dual_norm(Space::lp(2.0, 2), Functional{3.0, 4.0}) ==
          Approx(5.0).margin(1e-12));
  REQUIRE(dual_norm(Space::lp(1.0, 2), Functional{3.0, -4.0}) ==
          Approx(4.0).margin(1e-14));
  REQUIRE(dual_norm(Space::lp(kInfinity, 2), Functional{3.0, -4.0}) ==
          Approx(7.0).margin(1e-14));
}

TEST_CASE("direct sums combine block norms", "[norm][direct_sum]") {
  const Space z = Space::direct_sum(2.0, Space::lp(1.0, 2), Space::lp(kInfinity, 2));
  REQUIRE(z.dim() == 4);
  REQUIRE(norm(z, Vector{1.0, 1.0, 2.0, 0.5}) ==
          Approx(2.8284271247461903).margin(1e-12));
  // dual exponent is conjugate: q = 2 here
  REQUIRE(dual_norm(z, Functional{1.0, -1.0, 0.0, 3.0}) ==
          Approx(std::hypot(1.0, 3.0)).margin(1e-12));

  const Space nested =
      Space::direct_sum(1.0, z, Space::lp(2.0, 1));
  REQUIRE(nested.dim() == 5);
  REQUIRE(norm(nested, Vector{1.0, 1.0, 2.0, 0.5, -1.5}) ==
          Approx(2.8284271247461903 + 1.5).margin(1e-12));
}

TEST_CASE("representability mirrors the construction", "[norm][capability]") {
  REQUIRE(Space::lp(1.0, 3).representable());
  REQUIRE(Space::lp(kInfinity, 3).representable());
  REQUIRE(Space::lp(2.0, 1).representable());  // segment regardless of p
  REQUIRE_FALSE(Space::lp(2.0, 2).representable());
  REQUIRE_THROWS_AS(Space::lp(2.0, 2).ball(), CapabilityError);

  const Space prod = Space::direct_sum(kInfinity, Space::lp(1.0, 2),
                                       Space::lp(kInfinity, 2));
  REQUIRE(prod.representable());
  const Space curved = Space::direct_sum(kInfinity, Space::lp(2.0, 2),
                                         Space::lp(kInfinity, 2));
  REQUIRE_FALSE(curved.representable());
  const Space interior = Space::direct_sum(2.0, Space::lp(1.0, 2),
                                           Space::lp(1.0, 2));
  REQUIRE_FALSE(interior.representable());  // curved combination rule
}

TEST_CASE("polar of a space is its dual unit ball", "[norm][polar]") {
  const Space diamond = Space::polyhedral(PolyhedralBall::cross_polytope(2));
  const PolyhedralBall dual_ball = polar(diamond);
  REQUIRE(dual_ball.vertex_count() == 4);
  // dual of l1 is linf: corners
  double best = 0.0;
  for (const auto& v : dual_ball.vertices()) best = std::max(best, v.max_abs());
  REQUIRE(best == Approx(1.0).margin(1e-14));
  for (const auto& v : dual_ball.vertices()) {
    REQUIRE(std::abs(v[0] * v[1]) == Approx(1.0).margin(1e-14));  // (+-1, +-1)
  }
}

TEST_CASE("face_of_ball picks the attaining boundary face", "[norm][face]") {
  const Space square = Space::polyhedral(PolyhedralBall::cube(2));
  const auto edge = face_of_ball(square, Functional{1.0, 0.0});
  REQUIRE(edge.size() == 2);
  for (const auto& v : edge) REQUIRE(v[0] == Approx(1.0).margin(1e-14));

  const auto corner = face_of_ball(square, Functional{1.0, 1.0});
  REQUIRE(corner.size() == 1);
  REQUIRE(coord_distance(corner[0], Vector{1.0, 1.0}) <= 1e-14);

  const auto pt = face_of_ball(Space::lp(2.0, 2), Functional{3.0, 4.0});
  REQUIRE(pt.size() == 1);
  REQUIRE(coord_distance(pt[0], Vector{0.6, 0.8}) <= 1e-12);
}

TEST_CASE("vector and functional inputs are validated", "[norm][errors]") {
  REQUIRE_THROWS_AS(Vector({1.0, std::nan("")}), InputError);
  const Space s = Space::lp(2.0, 2);
  REQUIRE_THROWS_AS(dual_norm(s, Functional{1.0}), InputError);
  REQUIRE_THROWS_AS(Space::direct_sum(0.9, s, s), InputError);
}

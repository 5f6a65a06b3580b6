#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "normlab/catalog.hpp"
#include "normlab/orthogonality.hpp"

using Catch::Approx;
using namespace normlab;

namespace {

std::vector<double> symmetric_grid(double hi, int half) {
  std::vector<double> g;
  for (int i = 1; i <= half; ++i) {
    const double l = hi * i / half;
    g.push_back(l);
    g.push_back(-l);
  }
  return g;
}

}  // namespace

TEST_CASE("orthogonality at a square corner", "[ortho]") {
  const Space square = Space::lp(kInfinity, 2);
  const Vector x{1.0, 1.0};

  const OrthogonalityReport r1 = orthogonality_report(square, x, Vector{1.0, -1.0});
  REQUIRE(r1.is_bj);  // f(y) changes sign over the face
  REQUIRE(r1.eps_min == Approx(0.0).margin(1e-12));
  REQUIRE(std::abs(r1.witness(Vector{1.0, -1.0})) <= 1e-12);

  const OrthogonalityReport r2 = orthogonality_report(square, x, Vector{1.0, 0.25});
  REQUIRE_FALSE(r2.is_bj);
  REQUIRE(r2.eps_min == Approx(0.25).margin(1e-12));
  REQUIRE(coord_distance(r2.witness, Functional{0.0, 1.0}) <= 1e-12);
}

TEST_CASE("eps_min is a scale- and sign-invariant ratio", "[ortho]") {
  const Space square = Space::lp(kInfinity, 2);
  const Vector x{1.0, 1.0}, y{1.0, 0.25};
  const double e = eps_min(square, x, y);
  REQUIRE(eps_min(square, x, 10.0 * y) == Approx(e).margin(1e-12));
  REQUIRE(eps_min(square, x, -1.0 * y) == Approx(e).margin(1e-12));
  REQUIRE(eps_min(square, 10.0 * x, y) == Approx(e).margin(1e-12));
  REQUIRE(eps_min(square, x, x) == Approx(1.0).margin(1e-12));  // clamped
  REQUIRE(eps_min(square, x, Vector{0.0, 0.0}) == 0.0);
}

TEST_CASE("the delta hexagon orthogonality facts", "[ortho][example]") {
  for (double delta : {0.5, 1.0, 2.0}) {
    const Space b = example31_space(delta);
    const Vector p = example31_apex(delta);
    const Vector r1{1.0, delta}, r2{-1.0, delta};
    REQUIRE(is_bj_orthogonal(b, p, r1));
    REQUIRE(is_bj_orthogonal(b, p, r2));
    // the sum points along x itself: maximally non-orthogonal
    REQUIRE(eps_min(b, p, r1 + r2) == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("orthogonality handles degenerate arguments", "[ortho][errors]") {
  const Space square = Space::lp(kInfinity, 2);
  REQUIRE(is_bj_orthogonal(square, Vector{1.0, 1.0}, Vector{0.0, 0.0}));
  REQUIRE_THROWS_AS(is_bj_orthogonal(square, Vector{0.0, 0.0}, Vector{1.0, 0.0}),
                    InputError);
  REQUIRE_THROWS_AS(eps_min(square, Vector{1.0, 1.0}, Vector{1.0}), InputError);
}

TEST_CASE("quadratic defining inequality on a lambda grid", "[ortho][eq2]") {
  const Space square = Space::lp(kInfinity, 2);
  const Vector x{1.0, 1.0}, y{1.0, 0.25};
  const auto grid = symmetric_grid(2.0, 40);
  // eps_min = 0.25: holds above, fails below
  REQUIRE(check_def_inequality(square, x, y, 0.3, grid));
  REQUIRE(check_def_inequality(square, x, y, 0.25 + 1e-6, grid));
  REQUIRE_FALSE(check_def_inequality(square, x, y, 0.2, grid));
  REQUIRE(check_def_inequality(square, x, Vector{0.0, 0.0}, 0.1, grid));
}

TEST_CASE("grid validation for the defining inequality", "[ortho][errors]") {
  const Space square = Space::lp(kInfinity, 2);
  const Vector x{1.0, 1.0}, y{1.0, 0.25};
  const std::vector<double> pair{0.5, -0.5};
  const std::vector<double> lopsided{0.5, 0.25};
  const std::vector<double> empty;
  REQUIRE_THROWS_AS(check_def_inequality(square, x, y, 1.0, pair), InputError);
  REQUIRE_THROWS_AS(check_def_inequality(square, x, y, -0.1, pair), InputError);
  REQUIRE_THROWS_AS(check_def_inequality(square, x, y, 0.5, empty), InputError);
  REQUIRE_THROWS_AS(check_def_inequality(square, x, y, 0.5, lopsided),
                    InputError);
}

TEST_CASE("additivity report on the hexagon", "[ortho][additivity]") {
  const Space hexagon = regular_polygon_space(3).space;
  const Vector x{1.0, 0.0}, y1{0.0, 1.0}, y2{0.0, 3.0};
  const AdditivityReport r = additivity_report(hexagon, x, y1, y2);

  REQUIRE(r.eps_x == Approx(1.0).margin(1e-9));
  REQUIRE(r.eps_y1 == Approx(0.0).margin(1e-12));
  REQUIRE(r.eps_y2 == Approx(0.0).margin(1e-12));
  REQUIRE(r.eps_out == Approx(0.0).margin(1e-12));
  REQUIRE(r.window_43 == Approx(2.0).margin(1e-12));
  REQUIRE(r.window_42 == Approx(2.0 / 3.0).margin(1e-12));

  // eps_x = 1 exceeds the 4.2 window but fits the 4.3 one
  REQUIRE_FALSE(r.hyp_42);
  REQUIRE(r.verdict_42 == Verdict::vacuous);
  REQUIRE(r.hyp_43);
  REQUIRE(r.verdict_43 == Verdict::pass);
  REQUIRE(r.hyp_46);
  REQUIRE(r.verdict_46 == Verdict::pass);
}

TEST_CASE("cancelling directions make the windows vacuous",
          "[ortho][additivity]") {
  const Space hexagon = regular_polygon_space(3).space;
  const AdditivityReport r = additivity_report(hexagon, Vector{1.0, 0.0},
                                               Vector{0.0, 1.0}, Vector{0.0, -1.0});
  REQUIRE(r.verdict_42 == Verdict::vacuous);
  REQUIRE(r.verdict_43 == Verdict::vacuous);
  REQUIRE(r.verdict_46 == Verdict::vacuous);
}

TEST_CASE("escape-direction witness check", "[ortho][lemma]") {
  const Space square = Space::lp(kInfinity, 2);
  const double alpha = 0.25;
  const Vector x{1.0, 1.0}, y1{1.0, alpha}, y2{alpha, 1.0};
  REQUIRE(lemma44_check(square, x, y1, y2));

  // no escape: y1 sits on the corner itself
  REQUIRE_FALSE(lemma44_check(square, x, Vector{1.0, 1.0}, y2));
  // escapes, but the sum lands mid-edge where one functional vanishes
  REQUIRE_FALSE(lemma44_check(square, x, y1, Vector{1.0, -alpha}));

  REQUIRE_FALSE(lemma44_check(square, x, y1, -1.0 * y1));
  REQUIRE_THROWS_AS(lemma44_check(square, x, Vector{2.0, 0.0}, y2), InputError);
}

TEST_CASE("verdict names serialize", "[ortho]") {
  REQUIRE(std::string(to_string(Verdict::pass)) == "pass");
  REQUIRE(std::string(to_string(Verdict::fail)) == "fail");
  REQUIRE(std::string(to_string(Verdict::vacuous)) == "vacuous");
}

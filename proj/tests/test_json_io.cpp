#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "normlab/json_io.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace normlab;

TEST_CASE("parse the five space spec types", "[json][parse]") {
  const Space diamond = space_from_json(nlohmann::json::parse(
      R"({"type":"polyhedral","vertices":[[1,0],[0,1],[-1,0],[0,-1]]})"));
  REQUIRE(norm(diamond, Vector{1.0, 2.0}) == Approx(3.0).margin(1e-12));

  const Space l2 = space_from_json(
      nlohmann::json::parse(R"({"type":"lp","p":2.0,"dim":3})"));
  REQUIRE(norm(l2, Vector{1.0, 2.0, 2.0}) == Approx(3.0).margin(1e-12));

  const Space linf = space_from_json(
      nlohmann::json::parse(R"({"type":"lp","p":"inf","dim":2})"));
  REQUIRE(norm(linf, Vector{1.0, -3.0}) == Approx(3.0).margin(1e-12));

  const Space sum = space_from_json(nlohmann::json::parse(
      R"({"type":"direct_sum","p":1.0,
          "left":{"type":"lp","p":"inf","dim":1},
          "right":{"type":"lp","p":"inf","dim":1}})"));
  REQUIRE(norm(sum, Vector{1.0, 2.0}) == Approx(3.0).margin(1e-12));

  const Space oct = space_from_json(
      nlohmann::json::parse(R"({"type":"regular_polygon","n":4})"));
  REQUIRE(oct.ball().vertex_count() == 8);

  const Space b = space_from_json(
      nlohmann::json::parse(R"({"type":"example_3_1","delta":0.25})"));
  REQUIRE(norm(b, Vector{0.0, 1.25}) == Approx(1.0).margin(1e-12));
}

TEST_CASE("parse diagnostics name the offending field", "[json][parse]") {
  REQUIRE_THROWS_WITH(
      space_from_json(nlohmann::json::parse(R"({"type":"lp","p":2.0})")),
      ContainsSubstring("missing field 'dim'"));
  REQUIRE_THROWS_WITH(
      space_from_json(nlohmann::json::parse(R"({"p":2.0,"dim":2})")),
      ContainsSubstring("missing field 'type'"));
  REQUIRE_THROWS_WITH(
      space_from_json(nlohmann::json::parse(R"({"type":"banana"})")),
      ContainsSubstring("unknown value 'banana'"));
  REQUIRE_THROWS_WITH(
      space_from_json(nlohmann::json::parse(R"({"type":"polyhedral"})")),
      ContainsSubstring("missing field 'vertices'"));
  REQUIRE_THROWS_AS(
      space_from_json(nlohmann::json::parse(R"({"type":"lp","p":"two","dim":2})")),
      InputError);
  REQUIRE_THROWS_AS(space_from_json(nlohmann::json::parse(R"([1,2,3])")),
                    InputError);
}

TEST_CASE("serialization round-trips the norm", "[json][serialize]") {
  const std::vector<std::string> specs{
      R"({"type":"polyhedral","vertices":[[1,0],[0,1],[-1,0],[0,-1]]})",
      R"({"type":"lp","p":1.5,"dim":3})",
      R"({"type":"lp","p":"inf","dim":2})",
      R"({"type":"regular_polygon","n":5})",
      R"({"type":"example_3_1","delta":2.0})",
      R"({"type":"direct_sum","p":2.0,
          "left":{"type":"regular_polygon","n":3},
          "right":{"type":"lp","p":2.0,"dim":2}})"};
  for (const auto& text : specs) {
    const Space a = space_from_json(nlohmann::json::parse(text));
    const Space b = space_from_json(space_to_json(a));
    REQUIRE(b.dim() == a.dim());
    Rng rng(99);
    for (int k = 0; k < 25; ++k) {
      std::vector<double> c(static_cast<size_t>(a.dim()));
      for (double& v : c) v = rng.uniform(-3.0, 3.0);
      const Vector x(c);
      REQUIRE(norm(b, x) == Approx(norm(a, x)).margin(1e-12));
      REQUIRE(dual_norm(b, Functional(c)) ==
              Approx(dual_norm(a, Functional(c))).margin(1e-12));
    }
  }
}

TEST_CASE("infinite exponents serialize as the string inf", "[json][serialize]") {
  REQUIRE(space_to_json(Space::lp(kInfinity, 2))["p"] == "inf");
  REQUIRE(space_to_json(Space::lp(2.0, 2))["p"] == 2.0);
  const nlohmann::json j = space_to_json(prism_space(3));
  REQUIRE(j["type"] == "direct_sum");
  REQUIRE(j["p"] == "inf");
  REQUIRE(j["left"]["type"] == "polyhedral");
  REQUIRE(j["right"]["type"] == "lp");
  // catalog shorthands expand to the polytope they construct
  REQUIRE(space_to_json(regular_polygon_space(4).space)["type"] == "polyhedral");
}

TEST_CASE("vectors parse from coordinate arrays", "[json][parse]") {
  const Vector v = vector_from_json(nlohmann::json::parse("[1.0,2.0,3.0]"));
  REQUIRE(v.dim() == 3);
  REQUIRE(v[2] == 3.0);
  REQUIRE_THROWS_AS(vector_from_json(nlohmann::json::parse("[]")), InputError);
  REQUIRE_THROWS_AS(vector_from_json(nlohmann::json::parse(R"("nope")")),
                    InputError);
  REQUIRE(to_json(Vector{1.0, -2.0}) == nlohmann::json::parse("[1.0,-2.0]"));
}

TEST_CASE("report serializers expose the documented keys", "[json][serialize]") {
  const Space square = Space::lp(kInfinity, 2);
  const Vector corner{1.0, 1.0};

  const SmoothnessReport sr = smoothness_report(square, corner);
  const nlohmann::json js = to_json(sr, support_set(square, corner));
  for (const char* key : {"x", "eps", "face", "is_smooth", "is_approx_smooth"}) {
    REQUIRE(js.contains(key));
  }
  REQUIRE(js["eps"].get<double>() == Approx(2.0).margin(1e-12));
  REQUIRE(js["face"].size() == 2);

  const nlohmann::json jc = to_json(space_constants(square));
  REQUIRE(jc["E"].get<double>() == Approx(2.0).margin(1e-12));
  REQUIRE(jc["S"] == jc["R"]);

  const nlohmann::json jd = to_json(rho(square, corner, Vector{1.0, -1.0}));
  REQUIRE(jd["rho_plus"].get<double>() == Approx(1.0).margin(1e-12));
  REQUIRE(jd["rho_minus"].get<double>() == Approx(-1.0).margin(1e-12));

  const nlohmann::json jn =
      to_json(rho_numeric_schedule(square, corner, Vector{1.0, -1.0}));
  REQUIRE(jn["lambdas"].size() == 3);
  REQUIRE(jn["consistent"] == true);

  const nlohmann::json jo =
      to_json(orthogonality_report(square, corner, Vector{1.0, -1.0}));
  REQUIRE(jo["is_bj"] == true);
  REQUIRE(jo["eps_min"].get<double>() == Approx(0.0).margin(1e-12));
  REQUIRE(jo["witness"].is_array());

  const nlohmann::json ja = to_json(
      additivity_report(square, corner, Vector{1.0, -1.0}, Vector{0.5, -0.5}));
  for (const char* key : {"eps_x", "eps_y1", "eps_y2", "eps_out", "window_42",
                          "window_43", "hyp_42", "hyp_43", "hyp_46",
                          "verdict_42", "verdict_43", "verdict_46"}) {
    REQUIRE(ja.contains(key));
  }
  REQUIRE(ja["verdict_43"].is_string());
}

TEST_CASE("suite results serialize with their dossier", "[json][serialize]") {
  const SuiteResult r = run_suite("bipolar", 12, 5);
  const nlohmann::json j = to_json(r);
  REQUIRE(j["name"] == "bipolar");
  REQUIRE(j["trials"] == 5);
  REQUIRE(j["passed"] == true);
  REQUIRE(j["failures"].is_array());
  REQUIRE(j["failures"].empty());
}

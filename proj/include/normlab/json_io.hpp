#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "normlab/core.hpp"
#include "normlab/derivatives.hpp"
#include "normlab/orthogonality.hpp"
#include "normlab/polytope.hpp"
#include "normlab/space.hpp"
#include "normlab/support.hpp"
#include "normlab/vec.hpp"
#include "normlab/verify.hpp"

namespace normlab {

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const std::string& name,
                                           const std::string& context) {
  if (!j.contains(name)) {
    throw InputError(context + ": missing field '" + name + "'");
  }
  return j.at(name);
}

inline double parse_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) {
    throw InputError("field '" + field + "' must be a number");
  }
  return j.get<double>();
}

inline int parse_int(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer()) {
    throw InputError("field '" + field + "' must be an integer");
  }
  return j.get<int>();
}

/// p is an IEEE double or the literal string "inf".
inline double parse_exponent(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    throw InputError("field '" + field + "' must be a number or \"inf\"");
  }
  return parse_number(j, field);
}

inline std::vector<double> parse_coords(const nlohmann::json& j,
                                        const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw InputError("field '" + field + "' must be a nonempty array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(parse_number(v, field));
  return out;
}

}  // namespace detail

inline Vector vector_from_json(const nlohmann::json& j,
                               const std::string& field = "vector") {
  return Vector(detail::parse_coords(j, field));
}

inline nlohmann::json to_json(const Vector& x) {
  return nlohmann::json(x.coords());
}

inline nlohmann::json to_json(const Functional& f) {
  return nlohmann::json(f.coords());
}

inline Space space_from_json(const nlohmann::json& j);

namespace detail {

inline Space space_from_json_impl(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("space spec must be a JSON object");
  const std::string type =
      require_field(j, "type", "space spec").get<std::string>();
  if (type == "polyhedral") {
    const auto& jv = require_field(j, "vertices", "polyhedral space spec");
    if (!jv.is_array() || jv.empty()) {
      throw InputError("field 'vertices' must be a nonempty array of points");
    }
    std::vector<Vector> vertices;
    vertices.reserve(jv.size());
    for (const auto& v : jv) vertices.emplace_back(parse_coords(v, "vertices"));
    return Space::polyhedral(PolyhedralBall::from_vertices(vertices));
  }
  if (type == "lp") {
    const double p = parse_exponent(require_field(j, "p", "lp space spec"), "p");
    const int dim = parse_int(require_field(j, "dim", "lp space spec"), "dim");
    return Space::lp(p, dim);
  }
  if (type == "direct_sum") {
    const double p =
        parse_exponent(require_field(j, "p", "direct_sum space spec"), "p");
    return Space::direct_sum(
        p, space_from_json(require_field(j, "left", "direct_sum space spec")),
        space_from_json(require_field(j, "right", "direct_sum space spec")));
  }
  if (type == "regular_polygon") {
    const int n =
        parse_int(require_field(j, "n", "regular_polygon space spec"), "n");
    return regular_polygon_space(n).space;
  }
  if (type == "example_3_1") {
    const double delta = parse_number(
        require_field(j, "delta", "example_3_1 space spec"), "delta");
    return example31_space(delta);
  }
  throw InputError("field 'type' has unknown value '" + type + "'");
}

}  // namespace detail

inline Space space_from_json(const nlohmann::json& j) {
  return detail::space_from_json_impl(j);
}

/// Canonical expansion: catalog shorthands come back as the polytope they
/// construct, so the output always re-parses under the schema.
inline nlohmann::json space_to_json(const Space& space) {
  nlohmann::json j;
  switch (space.kind()) {
    case Space::Kind::polyhedral: {
      j["type"] = "polyhedral";
      auto& verts = j["vertices"] = nlohmann::json::array();
      for (const auto& v : space.ball().vertices()) verts.push_back(to_json(v));
      break;
    }
    case Space::Kind::lp: {
      j["type"] = "lp";
      if (space.p() == kInfinity) {
        j["p"] = "inf";
      } else {
        j["p"] = space.p();
      }
      j["dim"] = space.dim();
      break;
    }
    case Space::Kind::direct_sum: {
      j["type"] = "direct_sum";
      if (space.p() == kInfinity) {
        j["p"] = "inf";
      } else {
        j["p"] = space.p();
      }
      j["left"] = space_to_json(space.left());
      j["right"] = space_to_json(space.right());
      break;
    }
  }
  return j;
}

inline nlohmann::json to_json(const SupportFace& face) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : face.vertices) out.push_back(to_json(f));
  return out;
}

inline nlohmann::json to_json(const SmoothnessReport& r, const SupportFace& face) {
  return nlohmann::json{{"x", to_json(r.x)},
                        {"eps", r.eps},
                        {"face", to_json(face)},
                        {"is_smooth", r.is_smooth},
                        {"is_approx_smooth", r.is_approx_smooth}};
}

inline nlohmann::json to_json(const SpaceConstants& c) {
  return nlohmann::json{{"E", c.E}, {"S", c.S}, {"R", c.R}};
}

inline nlohmann::json to_json(const DerivativePair& d) {
  return nlohmann::json{{"x", to_json(d.x)},
                        {"y", to_json(d.y)},
                        {"rho_plus", d.rho_plus},
                        {"rho_minus", d.rho_minus}};
}

inline nlohmann::json to_json(const NumericDerivativeCheck& c) {
  return nlohmann::json{{"lambdas", c.lambdas},
                        {"plus_estimates", c.plus_estimates},
                        {"minus_estimates", c.minus_estimates},
                        {"consistent", c.consistent}};
}

inline nlohmann::json to_json(const OrthogonalityReport& r) {
  return nlohmann::json{{"x", to_json(r.x)},
                        {"y", to_json(r.y)},
                        {"is_bj", r.is_bj},
                        {"eps_min", r.eps_min},
                        {"witness", to_json(r.witness)}};
}

inline nlohmann::json to_json(const AdditivityReport& r) {
  return nlohmann::json{{"x", to_json(r.x)},
                        {"y1", to_json(r.y1)},
                        {"y2", to_json(r.y2)},
                        {"eps_x", r.eps_x},
                        {"eps_y1", r.eps_y1},
                        {"eps_y2", r.eps_y2},
                        {"eps_out", r.eps_out},
                        {"window_42", r.window_42},
                        {"window_43", r.window_43},
                        {"hyp_42", r.hyp_42},
                        {"hyp_43", r.hyp_43},
                        {"hyp_46", r.hyp_46},
                        {"verdict_42", to_string(r.verdict_42)},
                        {"verdict_43", to_string(r.verdict_43)},
                        {"verdict_46", to_string(r.verdict_46)}};
}

inline nlohmann::json to_json(const SuiteResult& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) {
    failures.push_back(nlohmann::json{
        {"trial", f.trial}, {"seed", f.seed}, {"message", f.message}});
  }
  return nlohmann::json{{"name", r.name},
                        {"trials", r.trials},
                        {"passed", r.passed()},
                        {"failures", failures}};
}

}  // namespace normlab

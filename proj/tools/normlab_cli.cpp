// Command-line front end: parse a space spec, run one computation, emit a
// JSON or CSV report. Exit codes: 0 success, 1 computation failure, 2 input
// error, 3 verification failure.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normlab/normlab.hpp"

namespace {

using nlohmann::json;
using namespace normlab;

struct CommonOptions {
  std::string space_text;
  std::string x_text, y_text, y1_text, y2_text;
  double tol = -1.0;  // < 0 means library defaults
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "json";
  std::string out_path;
  bool no_header = false;
};

ToleranceConfig tolerances(const CommonOptions& opt) {
  return opt.tol < 0.0 ? ToleranceConfig{} : ToleranceConfig::uniform(opt.tol);
}

std::uint64_t effective_seed(const CommonOptions& opt) {
  if (opt.seed_given) return opt.seed;
  if (const char* env = std::getenv("NORMLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("NORMLAB_SEED must be an unsigned integer");
    }
  }
  return 2026;
}

/// --space accepts inline JSON (sniffed on a leading '{') or a file path.
json load_space_json(const std::string& text) {
  if (text.empty()) throw InputError("--space is required");
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return json::parse(text);
  }
  std::ifstream in(text);
  if (!in) throw InputError("cannot open space spec file: " + text);
  json j;
  in >> j;
  return j;
}

Vector parse_vector_flag(const std::string& text, const std::string& flag) {
  if (text.empty()) throw InputError(flag + " is required");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(flag + ": " + e.what());
  }
  return vector_from_json(j, flag);
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_coords(const std::vector<double>& coords) {
  std::string out;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ';';
    out += num17(coords[i]);
  }
  return out;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

void write_report(const CommonOptions& opt, const json& payload,
                  const std::vector<std::string>& csv_header,
                  const std::vector<std::string>& csv_row) {
  std::ostringstream body;
  if (opt.format == "csv") {
    if (!opt.no_header) {
      char stamp[64];
      const std::time_t now = std::time(nullptr);
      std::tm tm_utc{};
      gmtime_r(&now, &tm_utc);
      std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
      body << "# generated " << stamp << "\n";
    }
    for (size_t i = 0; i < csv_header.size(); ++i) {
      body << (i ? "," : "") << csv_header[i];
    }
    body << "\n";
    for (size_t i = 0; i < csv_row.size(); ++i) {
      body << (i ? "," : "") << csv_row[i];
    }
    body << "\n";
  } else {
    body << payload.dump(2) << "\n";
  }
  if (opt.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw InputError("cannot open output file: " + opt.out_path);
    out << body.str();
  }
}

void write_text(const CommonOptions& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw InputError("cannot open output file: " + opt.out_path);
    out << text;
  }
}

int run_smoothness(const CommonOptions& opt) {
  const ToleranceConfig tol = tolerances(opt);
  const Space space = space_from_json(load_space_json(opt.space_text));
  const Vector x = parse_vector_flag(opt.x_text, "--x");
  const SmoothnessReport r = smoothness_report(space, x, tol);
  const SupportFace face = support_set(space, x, tol);
  write_report(opt, to_json(r, face),
               {"x", "eps", "is_smooth", "is_approx_smooth", "face_size"},
               {csv_coords(x.coords()), num17(r.eps), csv_bool(r.is_smooth),
                csv_bool(r.is_approx_smooth),
                std::to_string(face.vertices.size())});
  return 0;
}

int run_constants(const CommonOptions& opt) {
  const ToleranceConfig tol = tolerances(opt);
  const Space space = space_from_json(load_space_json(opt.space_text));
  const SpaceConstants c = space_constants(space, tol);
  write_report(opt, to_json(c), {"E", "S", "R"},
               {num17(c.E), num17(c.S), num17(c.R)});
  return 0;
}

int run_derivative(const CommonOptions& opt, bool check) {
  const ToleranceConfig tol = tolerances(opt);
  const Space space = space_from_json(load_space_json(opt.space_text));
  const Vector x = parse_vector_flag(opt.x_text, "--x");
  const Vector y = parse_vector_flag(opt.y_text, "--y");
  const DerivativePair d = rho(space, x, y, tol);
  json payload = to_json(d);
  std::vector<std::string> header{"x", "y", "rho_plus", "rho_minus"};
  std::vector<std::string> row{csv_coords(x.coords()), csv_coords(y.coords()),
                               num17(d.rho_plus), num17(d.rho_minus)};
  if (check) {
    const NumericDerivativeCheck nc = rho_numeric_schedule(space, x, y, tol);
    payload["numeric"] = to_json(nc);
    header.insert(header.end(),
                  {"numeric_plus", "numeric_minus", "consistent"});
    row.insert(row.end(), {num17(nc.rho_plus()), num17(nc.rho_minus()),
                           csv_bool(nc.consistent)});
    write_report(opt, payload, header, row);
    return nc.consistent ? 0 : 3;
  }
  write_report(opt, payload, header, row);
  return 0;
}

int run_ortho(const CommonOptions& opt) {
  const ToleranceConfig tol = tolerances(opt);
  const Space space = space_from_json(load_space_json(opt.space_text));
  const Vector x = parse_vector_flag(opt.x_text, "--x");
  const Vector y = parse_vector_flag(opt.y_text, "--y");
  const OrthogonalityReport r = orthogonality_report(space, x, y, tol);
  write_report(opt, to_json(r), {"x", "y", "is_bj", "eps_min", "witness"},
               {csv_coords(x.coords()), csv_coords(y.coords()),
                csv_bool(r.is_bj), num17(r.eps_min),
                csv_coords(r.witness.coords())});
  return 0;
}

int run_additivity(const CommonOptions& opt) {
  const ToleranceConfig tol = tolerances(opt);
  const Space space = space_from_json(load_space_json(opt.space_text));
  const Vector x = parse_vector_flag(opt.x_text, "--x");
  const Vector y1 = parse_vector_flag(opt.y1_text, "--y1");
  const Vector y2 = parse_vector_flag(opt.y2_text, "--y2");
  const AdditivityReport r = additivity_report(space, x, y1, y2, tol);
  write_report(
      opt, to_json(r),
      {"eps_x", "eps_y1", "eps_y2", "eps_out", "window_42", "window_43",
       "hyp_42", "hyp_43", "hyp_46", "verdict_42", "verdict_43", "verdict_46"},
      {num17(r.eps_x), num17(r.eps_y1), num17(r.eps_y2), num17(r.eps_out),
       num17(r.window_42), num17(r.window_43), csv_bool(r.hyp_42),
       csv_bool(r.hyp_43), csv_bool(r.hyp_46), to_string(r.verdict_42),
       to_string(r.verdict_43), to_string(r.verdict_46)});
  return 0;
}

struct SweepRange {
  double lo = 0.0, hi = 0.0;
  int count = 0;
};

SweepRange parse_range(const std::string& text, bool integer_param) {
  SweepRange r;
  const size_t c1 = text.find(':');
  if (c1 == std::string::npos) {
    throw InputError("--range must look like lo:hi or lo:hi:count");
  }
  const size_t c2 = text.find(':', c1 + 1);
  try {
    r.lo = std::stod(text.substr(0, c1));
    r.hi = std::stod(text.substr(c1 + 1, c2 == std::string::npos
                                             ? std::string::npos
                                             : c2 - c1 - 1));
    r.count = c2 == std::string::npos
                  ? (integer_param ? static_cast<int>(r.hi - r.lo) + 1 : 10)
                  : std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw InputError("--range must look like lo:hi or lo:hi:count");
  }
  if (!(r.lo <= r.hi) || r.count < 1) {
    throw InputError("--range needs lo <= hi and a positive count");
  }
  return r;
}

int run_sweep(const CommonOptions& opt, const std::string& family,
              const std::string& param, const std::string& range_text) {
  const ToleranceConfig tol = tolerances(opt);
  std::ostringstream body;
  if (opt.format == "csv" && !opt.no_header) {
    char stamp[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    body << "# generated " << stamp << "\n";
  }
  json rows = json::array();

  if (family == "regular_polygon") {
    if (param != "n") {
      throw InputError("family regular_polygon sweeps the parameter n");
    }
    const SweepRange r = parse_range(range_text, true);
    body << "n,E_computed,E_closed_form,abs_diff\n";
    for (int n = static_cast<int>(r.lo); n <= static_cast<int>(r.hi); ++n) {
      const double computed =
          space_constants(regular_polygon_space(n, tol).space, tol).E;
      const double closed = closed_form_E(n);
      const double diff = std::abs(computed - closed);
      body << n << ',' << num17(computed) << ',' << num17(closed) << ','
           << num17(diff) << "\n";
      rows.push_back(json{{"n", n},
                          {"E_computed", computed},
                          {"E_closed_form", closed},
                          {"abs_diff", diff}});
    }
  } else if (family == "example_3_1") {
    if (param != "delta") {
      throw InputError("family example_3_1 sweeps the parameter delta");
    }
    const SweepRange r = parse_range(range_text, false);
    body << "delta,eps_computed,eps_closed_form,abs_diff\n";
    for (int i = 0; i < r.count; ++i) {
      const double delta =
          r.count == 1 ? r.lo : r.lo + (r.hi - r.lo) * i / (r.count - 1);
      const Space space = example31_space(delta, tol);
      const double computed = diam_support(space, example31_apex(delta), tol);
      const double closed = example31_apex_diam(delta);
      const double diff = std::abs(computed - closed);
      body << num17(delta) << ',' << num17(computed) << ',' << num17(closed)
           << ',' << num17(diff) << "\n";
      rows.push_back(json{{"delta", delta},
                          {"eps_computed", computed},
                          {"eps_closed_form", closed},
                          {"abs_diff", diff}});
    }
  } else {
    throw InputError(
        "--space-family must be regular_polygon or example_3_1");
  }

  if (opt.format == "csv") {
    write_text(opt, body.str());
  } else {
    write_text(opt, rows.dump(2) + "\n");
  }
  return 0;
}

int run_verify(const CommonOptions& opt, const std::vector<std::string>& names,
               int trials) {
  const ToleranceConfig tol = tolerances(opt);
  const std::uint64_t seed = effective_seed(opt);
  const std::vector<std::string> chosen =
      names.empty() ? suite_names() : names;
  json results = json::array();
  bool all_passed = true;
  for (const auto& name : chosen) {
    const int n = trials > 0 ? trials : suite_default_trials(name);
    const SuiteResult r = run_suite(name, seed, n, tol);
    all_passed = all_passed && r.passed();
    results.push_back(to_json(r));
  }
  write_text(opt, results.dump(2) + "\n");
  return all_passed ? 0 : 3;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool wants_space) {
  if (wants_space) {
    cmd->add_option("--space", opt.space_text,
                    "space spec: inline JSON or a path to a JSON file");
  }
  cmd->add_option("--tol", opt.tol,
                  "uniform override for every comparison tolerance");
  cmd->add_option("--seed", opt.seed, "random seed (default: NORMLAB_SEED)")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.out_path, "write the report to a file");
  cmd->add_flag("--no-header", opt.no_header,
                "omit the timestamp header from CSV output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional normed spaces: faces, derivatives, "
               "orthogonality, and their verification suites"};
  app.require_subcommand(1);

  CommonOptions opt;
  bool derivative_check = false;
  std::string sweep_family, sweep_param, sweep_range;
  std::vector<std::string> verify_suites;
  int verify_trials = 0;

  CLI::App* smoothness = app.add_subcommand(
      "smoothness", "support face and smoothness classification at x");
  add_common_flags(smoothness, opt, true);
  smoothness->add_option("--x", opt.x_text, "point, JSON array");

  CLI::App* constants = app.add_subcommand(
      "constants", "the three global constants E, S, R of a space");
  add_common_flags(constants, opt, true);

  CLI::App* derivative = app.add_subcommand(
      "derivative", "one-sided norm derivatives at x in direction y");
  add_common_flags(derivative, opt, true);
  derivative->add_option("--x", opt.x_text, "point, JSON array");
  derivative->add_option("--y", opt.y_text, "direction, JSON array");
  derivative->add_flag("--check", derivative_check,
                       "also run the finite-difference schedule");

  CLI::App* ortho = app.add_subcommand(
      "ortho", "orthogonality of y to x: exact and approximate");
  add_common_flags(ortho, opt, true);
  ortho->add_option("--x", opt.x_text, "point, JSON array");
  ortho->add_option("--y", opt.y_text, "direction, JSON array");

  CLI::App* additivity = app.add_subcommand(
      "additivity", "right-additivity report for (x; y1, y2)");
  add_common_flags(additivity, opt, true);
  additivity->add_option("--x", opt.x_text, "point, JSON array");
  additivity->add_option("--y1", opt.y1_text, "first direction, JSON array");
  additivity->add_option("--y2", opt.y2_text, "second direction, JSON array");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "parameter sweep over a space family, CSV by default");
  add_common_flags(sweep, opt, false);
  sweep->add_option("--space-family", sweep_family,
                    "regular_polygon or example_3_1")->required();
  sweep->add_option("--param", sweep_param, "swept parameter (n or delta)")
      ->required();
  sweep->add_option("--range", sweep_range, "lo:hi or lo:hi:count")->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "run randomized property suites and report dossiers");
  add_common_flags(verify, opt, false);
  verify->add_option("--suite", verify_suites,
                     "suite name (repeatable; default: all suites)");
  verify->add_option("--trials", verify_trials,
                     "trials per suite (default: per-suite setting)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  // sweep's natural output is CSV
  if (sweep->parsed() && sweep->count("--format") == 0) opt.format = "csv";

  try {
    if (smoothness->parsed()) return run_smoothness(opt);
    if (constants->parsed()) return run_constants(opt);
    if (derivative->parsed()) return run_derivative(opt, derivative_check);
    if (ortho->parsed()) return run_ortho(opt);
    if (additivity->parsed()) return run_additivity(opt);
    if (sweep->parsed()) {
      return run_sweep(opt, sweep_family, sweep_param, sweep_range);
    }
    if (verify->parsed()) return run_verify(opt, verify_suites, verify_trials);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "computation failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

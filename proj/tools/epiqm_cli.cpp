// Command-line front end: scenarios, compatibility checks, reconciliation
// updates, improvement, pooling, and golden-table generation.
//
// Exit codes: 0 ok; 2 usage or configuration error; 3 assignments live in
// incomparable spaces; 4 conditioning on an impossible observation.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epiqm/serialize.hpp"

namespace {

using epiqm::io::json;
namespace scen = epiqm::scenarios;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIncomparable = 3;
constexpr int kExitZeroEvidence = 4;

double support_tolerance() {
  const char* raw = std::getenv("EPISTEMIC_QM_TOL");
  if (raw == nullptr || *raw == '\0') return epiqm::kSupportTol;
  char* end = nullptr;
  const double tol = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(tol > 0.0))
    throw epiqm::BadConfig("EPISTEMIC_QM_TOL must be a positive number");
  return tol;
}

// Radians, with exact symbolic aliases: "pi", "-pi", "pi/2", "pi/4", ...
double parse_angle(const std::string& text) {
  std::string s = text;
  double sign = 1.0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    if (s[0] == '-') sign = -1.0;
    s.erase(0, 1);
  }
  if (s.rfind("pi", 0) == 0) {
    const double pi = std::acos(-1.0);
    if (s == "pi") return sign * pi;
    if (s[2] == '/') {
      char* end = nullptr;
      const double denom = std::strtod(s.c_str() + 3, &end);
      if (end != s.c_str() + s.size() || denom == 0.0)
        throw epiqm::BadConfig("cannot parse angle '" + text + "'");
      return sign * pi / denom;
    }
    throw epiqm::BadConfig("cannot parse angle '" + text + "'");
  }
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw epiqm::BadConfig("cannot parse angle '" + text + "'");
  return value;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_csv_value(std::ostream& out, const json& v) {
  if (v.is_number_float())
    out << format_number(v.get<double>());
  else if (v.is_string())
    out << v.get<std::string>();
  else
    out << v.dump();
}

// One "key,value[,value...]" line per top-level field; nested objects get
// dotted keys. Matrices flatten row-major as re/im pairs.
void print_csv(std::ostream& out, const json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_csv(out, value, name);
      continue;
    }
    out << name;
    if (value.is_array()) {
      const json flat = value.flatten();
      for (const auto& item : flat.items()) {
        out << ',';
        print_csv_value(out, item.value());
      }
    } else {
      out << ',';
      print_csv_value(out, value);
    }
    out << '\n';
  }
}

void print_table(std::ostream& out, const json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_table(out, value, name);
      continue;
    }
    out << "  " << name << ": ";
    if (value.is_array()) {
      out << "[";
      const json flat = value.flatten();
      bool first = true;
      for (const auto& item : flat.items()) {
        if (!first) out << ", ";
        first = false;
        print_csv_value(out, item.value());
      }
      out << "]";
    } else {
      print_csv_value(out, value);
    }
    out << '\n';
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "json")
    std::cout << epiqm::io::dump(j);
  else if (format == "csv")
    print_csv(std::cout, j);
  else
    print_table(std::cout, j);
}

struct ScenarioFlags {
  std::string name;
  std::string phi, omega_t, phi_left, phi_right;
  std::optional<double> epsilon;

  scen::ScenarioConfig to_config() const {
    scen::ScenarioConfig cfg;
    cfg.variant = scen::variant_from_name(name);
    if (!phi.empty()) cfg.phi = parse_angle(phi);
    if (!omega_t.empty()) cfg.omega_t = parse_angle(omega_t);
    if (!phi_left.empty()) cfg.phi_left = parse_angle(phi_left);
    if (!phi_right.empty()) cfg.phi_right = parse_angle(phi_right);
    cfg.epsilon = epsilon;
    return cfg;
  }

  json to_params_json() const {
    json params = json::object();
    if (!phi.empty()) params["phi"] = parse_angle(phi);
    if (!omega_t.empty()) params["omega_t"] = parse_angle(omega_t);
    if (!phi_left.empty()) params["phi_left"] = parse_angle(phi_left);
    if (!phi_right.empty()) params["phi_right"] = parse_angle(phi_right);
    if (epsilon) params["epsilon"] = *epsilon;
    return params;
  }
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
  cmd->add_option("--phi", flags.phi, "relative phase (radians; pi aliases ok)");
  cmd->add_option("--omega-t", flags.omega_t,
                  "dimensionless evolution phase omega*t");
  cmd->add_option("--phi-left", flags.phi_left, "left Wigner's phase");
  cmd->add_option("--phi-right", flags.phi_right, "right Wigner's phase");
  cmd->add_option("--epsilon", flags.epsilon, "benefit-of-the-doubt parameter");
}

int cmd_scenario(const ScenarioFlags& flags, const std::string& format,
                 double tol) {
  const auto cfg = flags.to_config();
  const auto result = scen::run_scenario(cfg, tol);
  emit(epiqm::io::scenario_to_json(flags.name, flags.to_params_json(), result),
       format);
  return kExitOk;
}

int cmd_compat(const std::string& path_a, const std::string& path_b,
               double tol) {
  const auto a = epiqm::io::read_state_file(path_a);
  const auto b = epiqm::io::read_state_file(path_b);
  json out;
  if (std::holds_alternative<epiqm::classical::ProbDist>(a) &&
      std::holds_alternative<epiqm::classical::ProbDist>(b)) {
    const auto& da = std::get<epiqm::classical::ProbDist>(a);
    const auto& db = std::get<epiqm::classical::ProbDist>(b);
    const bool ok = epiqm::classical::compatible(da, db, tol);
    json common = json::array();
    if (ok) {
      for (const auto& label : epiqm::classical::support(da, tol))
        if (db.at(label) > tol) common.push_back(label);
    }
    out = json{{"kind", "classical"},
               {"compatible", ok},
               {"common_support", common}};
  } else if (std::holds_alternative<epiqm::quantum::DensityOperator>(a) &&
             std::holds_alternative<epiqm::quantum::DensityOperator>(b)) {
    const auto& qa = std::get<epiqm::quantum::DensityOperator>(a);
    const auto& qb = std::get<epiqm::quantum::DensityOperator>(b);
    if (qa.dim() != qb.dim())
      throw epiqm::DimMismatch("states have different dimensions");
    const auto pa = epiqm::numerics::support_projector(qa.matrix, tol);
    const auto pb = epiqm::numerics::support_projector(qb.matrix, tol);
    const auto rank = epiqm::numerics::subspace_intersection_rank(pa, pb);
    out = json{{"kind", "quantum"},
               {"compatible", rank >= 1},
               {"common_support", rank}};
  } else {
    throw epiqm::SpaceMismatch(
        "one assignment is classical and the other quantum");
  }
  std::cout << epiqm::io::dump(out);
  return kExitOk;
}

int cmd_pool(const std::string& method, const std::string& weights_csv,
             std::optional<double> epsilon) {
  std::vector<double> weights;
  if (!weights_csv.empty()) {
    std::size_t pos = 0;
    while (pos <= weights_csv.size()) {
      const std::size_t comma = weights_csv.find(',', pos);
      const std::string piece =
          weights_csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                             : comma - pos);
      char* end = nullptr;
      const double w = std::strtod(piece.c_str(), &end);
      if (end == piece.c_str() || *end != '\0')
        throw epiqm::BadConfig("cannot parse weight '" + piece + "'");
      weights.push_back(w);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  const auto pooled = scen::run_pooling(scen::pool_method_from_name(method),
                                        weights, epsilon);
  std::cout << epiqm::io::dump(json{{"method", method},
                                    {"pooled", epiqm::io::dist_values(pooled)},
                                    {"labels", pooled.space.labels}});
  return kExitOk;
}

int cmd_improve(const std::string& case_name, std::optional<double> epsilon) {
  const auto id = scen::improvement_case_from_name(case_name);
  json out = epiqm::io::improvement_to_json(scen::run_improvement(id, epsilon));
  out["case"] = case_name;
  if (epsilon) out["epsilon"] = *epsilon;
  std::cout << epiqm::io::dump(out);
  return kExitOk;
}

int cmd_update(const ScenarioFlags& flags, const std::string& mode_name,
               const std::string& outcome, const std::string& agent,
               double tol) {
  const auto mode = mode_name == "classical" ? scen::Mode::kClassical
                   : mode_name == "quantum"
                       ? scen::Mode::kQuantum
                       : throw epiqm::BadConfig("mode must be classical or quantum");
  const auto result =
      scen::run_reconciliation(flags.to_config(), mode, outcome, tol);

  json out = epiqm::io::reconciliation_to_json(result);
  out["mode"] = mode_name;
  out["outcome"] = outcome;
  std::cout << epiqm::io::dump(out);

  const bool wigner_defined = mode == scen::Mode::kClassical
                                  ? result.wigner_dist.has_value()
                                  : result.wigner_state.has_value();
  const bool friend_defined = mode == scen::Mode::kClassical
                                  ? result.friend_dist.has_value()
                                  : result.friend_state.has_value();
  const bool want_wigner = agent == "wigner" || agent == "both";
  const bool want_friend = agent == "friend" || agent == "both";
  if ((want_wigner && !wigner_defined) || (want_friend && !friend_defined)) {
    std::cerr << "impossible evidence for this agent\n";
    return kExitZeroEvidence;
  }
  return kExitOk;
}

int cmd_goldens(const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  for (const auto& [name, content] : epiqm::io::golden_files()) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
    if (!out) throw epiqm::BadConfig("cannot write golden file '" + name + "'");
    out << content;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bayesian compatibility, agreement, reconciliation, improvement and "
      "pooling for classical and quantum assignments in Wigner's-friend "
      "scenarios"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  ScenarioFlags scenario_flags;
  std::string format = "json";
  auto* scenario = app.add_subcommand("scenario", "run a catalog scenario");
  scenario->add_option("name", scenario_flags.name, "scenario name")->required();
  add_scenario_flags(scenario, scenario_flags);
  scenario->add_option("--format", format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  std::string file_a, file_b;
  auto* compat = app.add_subcommand("compat", "compare two state files");
  compat->add_option("file_a", file_a, "first state file")->required();
  compat->add_option("file_b", file_b, "second state file")->required();

  std::string pool_method, pool_weights;
  std::optional<double> pool_epsilon;
  auto* pool = app.add_subcommand("pool", "pool the two agents' assignments");
  pool->add_option("method", pool_method, "linear, multiplicative or supra")
      ->required();
  pool->add_option("--w", pool_weights, "comma-separated weights (wigner,friend)");
  pool->add_option("--epsilon", pool_epsilon,
                   "use the benefit-of-the-doubt Wigner assignment");

  std::string improve_case;
  std::optional<double> improve_epsilon;
  auto* improve = app.add_subcommand("improve", "run an improvement case");
  improve->add_option("case", improve_case, "c1a..c1d or q2a..q2d")->required();
  improve->add_option("--epsilon", improve_epsilon, "open-mindedness parameter");

  ScenarioFlags update_flags;
  update_flags.name = "canonical";
  std::string update_mode, update_outcome = "0", update_agent = "both";
  auto* update =
      app.add_subcommand("update", "condition both agents on a test outcome");
  update->add_option("mode", update_mode, "classical or quantum")->required();
  update->add_option("--outcome", update_outcome, "observed outcome (0 or 1)");
  update->add_option("--agent", update_agent, "wigner, friend or both")
      ->check(CLI::IsMember({"wigner", "friend", "both"}));
  update->add_option("--scenario", update_flags.name, "scenario name");
  add_scenario_flags(update, update_flags);

  std::string goldens_dir;
  auto* goldens =
      app.add_subcommand("goldens", "write all reference tables to a directory");
  goldens->add_option("out_dir", goldens_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const double tol = support_tolerance();
    if (scenario->parsed()) return cmd_scenario(scenario_flags, format, tol);
    if (compat->parsed()) return cmd_compat(file_a, file_b, tol);
    if (pool->parsed()) return cmd_pool(pool_method, pool_weights, pool_epsilon);
    if (improve->parsed()) return cmd_improve(improve_case, improve_epsilon);
    if (update->parsed())
      return cmd_update(update_flags, update_mode, update_outcome, update_agent,
                        tol);
    if (goldens->parsed()) return cmd_goldens(goldens_dir);
    std::cerr << "no subcommand given\n";
    return kExitConfig;
  } catch (const epiqm::SpaceMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIncomparable;
  } catch (const epiqm::DimMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIncomparable;
  } catch (const epiqm::ZeroEvidence& e) {
    std::cerr << "impossible evidence for this agent: " << e.what() << '\n';
    return kExitZeroEvidence;
  } catch (const epiqm::JointlyIncompatible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitZeroEvidence;
  } catch (const epiqm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

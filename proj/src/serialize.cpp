#include "epiqm/serialize.hpp"

#include <cmath>
#include <fstream>

namespace epiqm::io {

namespace {

using classical::OutcomeSpace;
using classical::ProbDist;
using quantum::DensityOperator;
using quantum::Matrix;
using scenarios::ScenarioResult;
using scenarios::Verdict;

std::vector<std::string> basis_labels(Eigen::Index dim) {
  // Bitstring labels for power-of-two dimensions, plain indices otherwise.
  Eigen::Index qubits = 0;
  for (Eigen::Index d = 1; d < dim; d *= 2) ++qubits;
  std::vector<std::string> labels;
  if ((Eigen::Index{1} << qubits) == dim) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      std::string bits;
      for (Eigen::Index b = qubits; b-- > 0;)
        bits += ((i >> b) & 1) ? '1' : '0';
      labels.push_back(bits.empty() ? "0" : bits);
    }
  } else {
    for (Eigen::Index i = 0; i < dim; ++i) labels.push_back(std::to_string(i));
  }
  return labels;
}

}  // namespace

json dist_values(const ProbDist& dist) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < dist.probs.size(); ++i)
    arr.push_back(dist.probs(i));
  return arr;
}

json matrix_values(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json state_to_json(const ProbDist& dist) {
  return json{{"kind", "classical"},
              {"labels", dist.space.labels},
              {"data", dist_values(dist)}};
}

json state_to_json(const DensityOperator& state) {
  return json{{"kind", "quantum"},
              {"labels", basis_labels(state.dim())},
              {"data", matrix_values(state.matrix)}};
}

StateValue state_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const json& data = j.at("data");
    if (kind == "classical") {
      Eigen::VectorXd probs(static_cast<Eigen::Index>(data.size()));
      for (std::size_t i = 0; i < data.size(); ++i)
        probs(static_cast<Eigen::Index>(i)) = data[i].get<double>();
      return ProbDist(OutcomeSpace(labels), std::move(probs));
    }
    if (kind == "quantum") {
      const auto dim = static_cast<Eigen::Index>(data.size());
      Matrix m(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const json& row = data[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != dim)
          throw BadConfig("quantum state data is not square");
        for (Eigen::Index k = 0; k < dim; ++k) {
          const json& entry = row[static_cast<std::size_t>(k)];
          m(i, k) = {entry.at(0).get<double>(), entry.at(1).get<double>()};
        }
      }
      return DensityOperator(std::move(m));
    }
    throw BadConfig("unknown state kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw BadConfig(std::string("malformed state file: ") + e.what());
  } catch (const InvalidState& e) {
    throw BadConfig(std::string("state violates its invariants: ") + e.what());
  }
}

StateValue read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw BadConfig("cannot parse '" + path + "': " + e.what());
  }
  return state_from_json(j);
}

void write_state_file(const std::string& path, const StateValue& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadConfig("cannot write '" + path + "'");
  std::visit([&](const auto& v) { out << dump(state_to_json(v)); }, value);
}

json verdict_to_json(Verdict verdict, bool quantum_side) {
  switch (verdict) {
    case Verdict::kCompatible: return json(true);
    case Verdict::kIncompatible: return json(false);
    case Verdict::kIncomparable:
      return json(quantum_side ? "dim_mismatch" : "space_mismatch");
    case Verdict::kNotApplicable: return json("not_applicable");
  }
  return json();
}

json scenario_to_json(const std::string& name, const json& params,
                      const ScenarioResult& result) {
  json out{{"scenario", name},
           {"params", params},
           {"wigner_dist", dist_values(result.wigner_dist)},
           {"wigner_labels", result.wigner_dist.space.labels},
           {"friend_dist", dist_values(result.friend_dist)},
           {"friend_labels", result.friend_dist.space.labels},
           {"classical_compatible",
            verdict_to_json(result.classical_compatible, false)},
           {"quantum_compatible",
            verdict_to_json(result.quantum_compatible, true)}};
  if (result.wigner_state)
    out["wigner_state"] = matrix_values(result.wigner_state->matrix);
  if (result.friend_state)
    out["friend_state"] = matrix_values(result.friend_state->matrix);
  if (result.two_wigners) {
    const auto& block = *result.two_wigners;
    out["two_wigners"] =
        json{{"right_dist", dist_values(block.right_dist)},
             {"right_state", matrix_values(block.right_state.matrix)},
             {"right_vs_friend_classical",
              verdict_to_json(block.right_vs_friend_classical, false)},
             {"right_vs_friend_quantum",
              verdict_to_json(block.right_vs_friend_quantum, true)},
             {"left_vs_right_classical",
              verdict_to_json(block.left_vs_right_classical, false)},
             {"left_vs_right_quantum",
              verdict_to_json(block.left_vs_right_quantum, true)}};
  }
  return out;
}

json reconciliation_to_json(const scenarios::ReconciliationResult& result) {
  json out = json::object();
  const auto put_dist = [&](const char* key,
                            const std::optional<ProbDist>& dist) {
    out[key] = dist ? dist_values(*dist) : json("zero_evidence");
  };
  const auto put_state = [&](const char* key,
                             const std::optional<DensityOperator>& state) {
    out[key] = state ? matrix_values(state->matrix) : json("zero_evidence");
  };
  if (result.wigner_dist || result.friend_dist) {
    put_dist("wigner_posterior", result.wigner_dist);
    put_dist("friend_posterior", result.friend_dist);
  }
  if (result.wigner_state || result.friend_state) {
    put_state("wigner_posterior_state", result.wigner_state);
    put_state("friend_posterior_state", result.friend_state);
  }
  if (!result.common_label.empty()) out["common_label"] = result.common_label;
  return out;
}

json improvement_to_json(const scenarios::ImprovementResult& result) {
  if (std::holds_alternative<ProbDist>(result))
    return json{{"posterior", dist_values(std::get<ProbDist>(result))}};
  return json{
      {"posterior_state",
       matrix_values(std::get<DensityOperator>(result).matrix)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::pair<std::string, std::string>> golden_files() {
  using scenarios::ImprovementCase;
  using scenarios::Mode;
  using scenarios::PoolMethod;
  using scenarios::ScenarioConfig;
  using scenarios::Variant;

  std::vector<std::pair<std::string, std::string>> files;
  const double pi = std::acos(-1.0);

  const auto config = [](Variant v) {
    ScenarioConfig cfg;
    cfg.variant = v;
    return cfg;
  };

  {  // the catalog at its headline parameter points
    json rows = json::array();
    const auto add = [&](const ScenarioConfig& cfg, const json& params) {
      rows.push_back(scenario_to_json(scenarios::variant_name(cfg.variant),
                                      params, scenarios::run_scenario(cfg)));
    };
    add(config(Variant::kCanonical), json::object());
    add(config(Variant::kWrongInitial), json::object());
    add(config(Variant::kNotGate), json::object());
    auto time0 = config(Variant::kTimeEvolution);
    time0.omega_t = 0.0;
    add(time0, json{{"omega_t", 0.0}});
    auto time_pi = config(Variant::kTimeEvolution);
    time_pi.omega_t = pi;
    add(time_pi, json{{"omega_t", pi}});
    auto phase0 = config(Variant::kPhase);
    phase0.phi = 0.0;
    add(phase0, json{{"phi", 0.0}});
    auto phase_pi = config(Variant::kPhase);
    phase_pi.phi = pi;
    add(phase_pi, json{{"phi", pi}});
    auto pair = config(Variant::kTwoWigners);
    pair.phi_left = 0.0;
    pair.phi_right = pi;
    add(pair, json{{"phi_left", 0.0}, {"phi_right", pi}});
    auto doubt = config(Variant::kBenefitOfDoubt);
    doubt.epsilon = 0.01;
    add(doubt, json{{"epsilon", 0.01}});
    add(config(Variant::kIgnorantWigner), json::object());
    files.emplace_back("scenarios.json", dump(rows));
  }
  {  // both reconciliation experiments, both outcomes
    json rows = json::array();
    for (const auto mode : {Mode::kClassical, Mode::kQuantum}) {
      for (const std::string outcome : {"0", "1"}) {
        const auto res = scenarios::run_reconciliation(
            config(Variant::kCanonical), mode, outcome);
        json row = reconciliation_to_json(res);
        row["mode"] = mode == Mode::kClassical ? "classical" : "quantum";
        row["outcome"] = outcome;
        rows.push_back(std::move(row));
      }
    }
    files.emplace_back("reconciliation.json", dump(rows));
  }
  {  // the eight improvement cases
    json rows = json::array();
    for (const auto& name : scenarios::improvement_case_names()) {
      const auto id = scenarios::improvement_case_from_name(name);
      const bool eps = name == "c1c" || name == "c1d" || name == "q2c" ||
                       name == "q2d";
      json row = improvement_to_json(scenarios::run_improvement(
          id, eps ? std::optional<double>(0.1) : std::nullopt));
      row["case"] = name;
      if (eps) row["epsilon"] = 0.1;
      rows.push_back(std::move(row));
    }
    files.emplace_back("improvement.json", dump(rows));
  }
  {  // pooling rules on the canonical pair
    json rows = json::array();
    const auto add = [&](const char* method, PoolMethod m,
                         const std::vector<double>& w) {
      json row{{"method", method},
               {"pooled", dist_values(scenarios::run_pooling(m, w))}};
      if (!w.empty()) row["weights"] = w;
      rows.push_back(std::move(row));
    };
    add("supra", PoolMethod::kSupra, {});
    add("linear", PoolMethod::kLinear, {0.5, 0.5});
    add("linear", PoolMethod::kLinear, {0.1, 0.9});
    add("multiplicative", PoolMethod::kMultiplicative, {0.5, 0.5});
    files.emplace_back("pooling.json", dump(rows));
  }
  {  // objectivist joint distribution and its marginal recoveries
    const auto f = scenarios::canonical_friend_dist();
    const auto w = scenarios::canonical_wigner_dist();
    const auto joint = classical::construct_objective_joint(f, w);
    json cells = json::array();
    for (Eigen::Index i = 0; i < joint.probs.size(); ++i)
      cells.push_back(joint.probs(i));
    const json row{
        {"cells", cells},
        {"cell_order", "y-major, then F, then W"},
        {"recovered_friend",
         dist_values(classical::condition_joint(joint, 1, "0"))},
        {"recovered_wigner",
         dist_values(classical::condition_joint(joint, 2, "0"))}};
    files.emplace_back("joint_distribution.json", dump(row));
  }
  {  // operator-level identities: supports, square roots, the star product
    const Matrix plus = quantum::bell_projector("phi+");
    const Matrix minus = quantum::bell_projector("phi-");
    const Matrix sigma_w = scenarios::canonical_wigner_state().matrix;
    const Matrix sigma_f = scenarios::canonical_friend_state().matrix;
    const Matrix supp_w = numerics::support_projector(sigma_w);
    const Matrix supp_f = numerics::support_projector(sigma_f);
    const json row{
        {"wigner_support_projector", matrix_values(supp_w)},
        {"wigner_support_rank", std::lround(supp_w.trace().real())},
        {"friend_support_projector", matrix_values(supp_f)},
        {"friend_support_rank", std::lround(supp_f.trace().real())},
        {"support_intersection_rank",
         numerics::subspace_intersection_rank(supp_w, supp_f)},
        {"sqrt_of_pure_projector", matrix_values(numerics::psd_sqrt(plus))},
        {"sqrt_of_friend_state", matrix_values(numerics::psd_sqrt(sigma_f))},
        {"star_product_wigner_onto_friend",
         matrix_values(numerics::star_product(plus, sigma_f))},
        {"star_commuting_diagonal",
         matrix_values(numerics::star_product(
             0.01 * plus + 0.99 * minus, sigma_f))}};
    files.emplace_back("operators.json", dump(row));
  }
  {  // hybrid joint state and its conditioning recoveries
    const auto hybrid = quantum::construct_hybrid_joint(
        scenarios::canonical_friend_state(), scenarios::canonical_wigner_state());
    json branches = json::array();
    for (Eigen::Index f = 0; f < 2; ++f) {
      for (Eigen::Index w = 0; w < 2; ++w) {
        const auto& b = hybrid.branch(f, w);
        json entry{{"friend_outcome", std::to_string(f)},
                   {"wigner_outcome", std::to_string(w)},
                   {"weight", b.weight},
                   {"placeholder", b.placeholder}};
        if (!b.placeholder) entry["state"] = matrix_values(b.state.matrix);
        branches.push_back(std::move(entry));
      }
    }
    const json row{
        {"branches", branches},
        {"recovered_friend",
         matrix_values(quantum::hybrid_condition(
                           hybrid, quantum::HybridVar::kFriend, "0")
                           .matrix)},
        {"recovered_wigner",
         matrix_values(quantum::hybrid_condition(
                           hybrid, quantum::HybridVar::kWigner, "0")
                           .matrix)}};
    files.emplace_back("hybrid_state.json", dump(row));
  }
  return files;
}

}  // namespace epiqm::io

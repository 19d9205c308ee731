#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "epiqm/classical.hpp"
#include "epiqm/quantum.hpp"
#include "epiqm/scenarios.hpp"

namespace epiqm::io {

using json = nlohmann::json;
using StateValue = std::variant<classical::ProbDist, quantum::DensityOperator>;

// State-file schema: {"kind": "classical"|"quantum", "labels": [...],
// "data": [...]}. Classical data is the probability list; quantum data is the
// row-major matrix with complex entries as [re, im] pairs.
json state_to_json(const classical::ProbDist& dist);
json state_to_json(const quantum::DensityOperator& state);
StateValue state_from_json(const json& j);  // throws BadConfig on bad shape

StateValue read_state_file(const std::string& path);
void write_state_file(const std::string& path, const StateValue& value);

json verdict_to_json(scenarios::Verdict verdict, bool quantum_side);
json scenario_to_json(const std::string& name, const json& params,
                      const scenarios::ScenarioResult& result);
json reconciliation_to_json(const scenarios::ReconciliationResult& result);
json improvement_to_json(const scenarios::ImprovementResult& result);

json dist_values(const classical::ProbDist& dist);
json matrix_values(const quantum::Matrix& m);

// Canonical serialized form: two-space indent, trailing newline, keys in
// lexicographic order. Byte-stable across runs for identical inputs.
std::string dump(const json& j);

// Every table of quantitative results the tool reproduces, as
// (filename, canonical JSON content) pairs, suitable for golden-file diffing.
std::vector<std::pair<std::string, std::string>> golden_files();

}  // namespace epiqm::io

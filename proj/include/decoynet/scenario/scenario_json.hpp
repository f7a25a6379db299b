#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "decoynet/scenario/scenario.hpp"

// Canonical document form of scenarios. Keys are emitted in sorted order so
// two dumps of equal scenarios are byte-identical.

namespace decoynet {

nlohmann::json to_json(const FeatureVector& features);
FeatureVector feature_vector_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_spec_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const FileTree& tree);
FileTree file_tree_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const NetworkScenario& scenario);
NetworkScenario scenario_from_json(const nlohmann::json& doc);

std::string dump_scenario(const NetworkScenario& scenario);
NetworkScenario load_scenario(std::string_view text);

}  // namespace decoynet

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "udw/core.hpp"

/// JSON scenario configs for the command-line tool.
///
/// Keys mirror ScenarioSpec in snake_case, plus `units` (must be "natural"),
/// `state_a` / `state_b` as {"alpha": a, "beta": [re, im]} and the switch-on time `t_a`.
/// Missing keys keep their defaults; unknown keys are rejected.
namespace udw::config {

struct RunConfig {
  ScenarioSpec scenario;
  DetectorState state_a = DetectorState::ground();
  DetectorState state_b = DetectorState::ground();
  double t_a = 0.0;
};

RunConfig from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

RunConfig parse(std::string_view text);
RunConfig load(const std::filesystem::path& path);

}  // namespace udw::config

// Copyright 2026 The quadsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file config.hpp
 * @brief JSON run configuration.
 *
 * Top-level groups: "vehicle" (plant), "common" (the model all controllers
 * believe), "proposed", "geometric", "euler_smc", "quat_pd" (gains), "sim"
 * and "scenario". Every key is optional; omitted keys keep their defaults.
 * Unknown keys are rejected so typos do not silently fall back to defaults.
 */

#pragma once

#include <optional>
#include <string>

#include "quadsmc/engine.hpp"

namespace quadsmc {

struct ScenarioOverrides {
  std::optional<bool> disturbance;
  std::optional<bool> uncertainty;
  std::optional<Vec3> disturbance_axes;
  std::optional<FlipVariant> flip_variant;
  std::optional<HeadingMode> heading;
  std::optional<LemniscateTargets> lemniscate;
};

struct RunConfig {
  VehicleModels models;
  ControllerGains gains;
  SimConfig sim;
  ScenarioOverrides scenario;
};

/// Parses a JSON document. Throws ConfigError with the offending key path.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Scenario preset for @p id with the config overrides applied. "flip" with
/// flip_variant "inverted" is the same as "flip-inverted".
ScenarioConfig build_scenario(const std::string& id, const ScenarioOverrides& overrides);

}  // namespace quadsmc

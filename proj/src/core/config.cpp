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

#include "quadsmc/config.hpp"

#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

bool boolean(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw ConfigError(where + ": expected true or false");
  return v.get<bool>();
}

Vec3 vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(where + ": expected an array of 3 numbers");
  return {number(v[0], where), number(v[1], where), number(v[2], where)};
}

template <typename T, typename F>
void read(const json& obj, const char* key, const std::string& where, T& out, F&& conv) {
  if (obj.contains(key)) out = conv(obj.at(key), where + "." + key);
}

void read_vehicle(const json& j, VehicleParams& p) {
  const std::string w = "vehicle";
  check_keys(j, w, {"mass", "inertia", "thrust_coeff", "torque_coeff", "arm_length",
                    "arm_angle_deg", "f_min", "f_max", "gravity"});
  read(j, "mass", w, p.mass, number);
  read(j, "inertia", w, p.inertia, vec3);
  read(j, "thrust_coeff", w, p.thrust_coeff, number);
  read(j, "torque_coeff", w, p.torque_coeff, number);
  read(j, "arm_length", w, p.arm_length, number);
  if (j.contains("arm_angle_deg")) {
    p.arm_angle = number(j.at("arm_angle_deg"), w + ".arm_angle_deg") * std::numbers::pi / 180.0;
  }
  read(j, "f_min", w, p.f_min, number);
  read(j, "f_max", w, p.f_max, number);
  read(j, "gravity", w, p.gravity, number);
}

void read_common(const json& j, VehicleParams& believed) {
  check_keys(j, "common", {"mass", "inertia"});
  read(j, "mass", "common", believed.mass, number);
  read(j, "inertia", "common", believed.inertia, vec3);
}

void read_position(const json& j, const std::string& w, PositionSmcGains& g) {
  read(j, "lambda_xi", w, g.lambda, vec3);
  read(j, "k_xi", w, g.k, vec3);
}

void read_gains(const json& root, ControllerGains& g) {
  if (root.contains("proposed")) {
    const json& j = root.at("proposed");
    check_keys(j, "proposed", {"lambda_xi", "k_xi", "lambda_q", "k_q"});
    read_position(j, "proposed", g.proposed.position);
    read(j, "lambda_q", "proposed", g.proposed.attitude.lambda, vec3);
    read(j, "k_q", "proposed", g.proposed.attitude.k, vec3);
  }
  if (root.contains("geometric")) {
    const json& j = root.at("geometric");
    const std::string w = "geometric";
    check_keys(j, w, {"k_xi", "k_v", "k_j", "k_r", "k_omega"});
    read(j, "k_xi", w, g.geometric.k_position, vec3);
    read(j, "k_v", w, g.geometric.k_velocity, vec3);
    read(j, "k_j", w, g.geometric.k_acceleration, vec3);
    read(j, "k_r", w, g.geometric.k_rotation, vec3);
    read(j, "k_omega", w, g.geometric.k_omega, vec3);
  }
  if (root.contains("euler_smc")) {
    const json& j = root.at("euler_smc");
    const std::string w = "euler_smc";
    check_keys(j, w, {"lambda_xi", "k_xi", "lambda_phi", "k_phi"});
    read(j, "lambda_xi", w, g.euler_smc.lambda_position, vec3);
    read(j, "k_xi", w, g.euler_smc.k_position, vec3);
    read(j, "lambda_phi", w, g.euler_smc.lambda_attitude, vec3);
    read(j, "k_phi", w, g.euler_smc.k_attitude, vec3);
  }
  if (root.contains("quat_pd")) {
    const json& j = root.at("quat_pd");
    check_keys(j, "quat_pd", {"lambda_xi", "k_xi", "k_q", "k_omega"});
    read_position(j, "quat_pd", g.quat_pd.position);
    read(j, "k_q", "quat_pd", g.quat_pd.k_q, vec3);
    read(j, "k_omega", "quat_pd", g.quat_pd.k_omega, vec3);
  }
}

void read_sim(const json& j, SimConfig& sim) {
  check_keys(j, "sim", {"dt_physics", "dt_control", "duration", "renormalize"});
  read(j, "dt_physics", "sim", sim.dt_physics, number);
  read(j, "dt_control", "sim", sim.dt_control, number);
  if (j.contains("duration")) sim.duration = number(j.at("duration"), "sim.duration");
  read(j, "renormalize", "sim", sim.renormalize, boolean);
}

FlipVariant flip_variant(const json& v, const std::string& where) {
  if (v == "yaw") return FlipVariant::kYawHalfTurn;
  if (v == "inverted") return FlipVariant::kInverted;
  throw ConfigError(where + ": expected \"yaw\" or \"inverted\"");
}

HeadingMode heading_mode(const json& v, const std::string& where) {
  if (v == "velocity") return HeadingMode::kVelocityAligned;
  if (v == "fixed") return HeadingMode::kFixed;
  throw ConfigError(where + ": expected \"velocity\" or \"fixed\"");
}

LemniscateTargets lemniscate_targets(const json& j, const std::string& w) {
  check_keys(j, w, {"max_speed", "max_accel", "shape_ratio", "altitude"});
  LemniscateTargets t;
  read(j, "max_speed", w, t.max_speed, number);
  read(j, "max_accel", w, t.max_accel, number);
  read(j, "shape_ratio", w, t.shape_ratio, number);
  read(j, "altitude", w, t.altitude, number);
  return t;
}

void read_scenario(const json& j, ScenarioOverrides& o) {
  const std::string w = "scenario";
  check_keys(j, w, {"disturbance", "uncertainty", "disturbance_axes", "flip_variant", "heading",
                    "lemniscate"});
  read(j, "disturbance", w, o.disturbance, boolean);
  read(j, "uncertainty", w, o.uncertainty, boolean);
  read(j, "disturbance_axes", w, o.disturbance_axes, vec3);
  read(j, "flip_variant", w, o.flip_variant, flip_variant);
  read(j, "heading", w, o.heading, heading_mode);
  read(j, "lemniscate", w, o.lemniscate, lemniscate_targets);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config", {"vehicle", "common", "proposed", "geometric", "euler_smc", "quat_pd",
                              "sim", "scenario"});
  RunConfig cfg;
  if (root.contains("vehicle")) read_vehicle(root.at("vehicle"), cfg.models.plant);
  if (root.contains("common")) read_common(root.at("common"), cfg.models.believed);
  read_gains(root, cfg.gains);
  if (root.contains("sim")) read_sim(root.at("sim"), cfg.sim);
  if (root.contains("scenario")) read_scenario(root.at("scenario"), cfg.scenario);

  cfg.models.plant.validate();
  cfg.models.believed.validate();
  cfg.sim.validate();
  cfg.gains.proposed.position.validate();
  cfg.gains.proposed.attitude.validate();
  cfg.gains.geometric.validate();
  cfg.gains.euler_smc.validate();
  cfg.gains.quat_pd.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ScenarioConfig build_scenario(const std::string& id, const ScenarioOverrides& o) {
  ScenarioConfig sc = (id == "flip" && o.flip_variant == FlipVariant::kInverted)
                          ? flip_scenario(FlipVariant::kInverted)
                          : scenario_by_id(id);
  if (o.disturbance) sc.disturbance = *o.disturbance;
  if (o.uncertainty) sc.uncertainty = *o.uncertainty;
  if (o.disturbance_axes) sc.disturbance_axes = *o.disturbance_axes;
  if (o.heading) sc.heading = *o.heading;
  if (o.lemniscate) sc.lemniscate = *o.lemniscate;
  sc.validate();
  return sc;
}

}  // namespace quadsmc

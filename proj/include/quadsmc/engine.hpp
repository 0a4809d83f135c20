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
 * @file engine.hpp
 * @brief Fixed-step closed-loop simulation.
 *
 * The plant is integrated with classical RK4 at dt_physics; the controller
 * runs every dt_control (an integer multiple) and its allocated, saturated
 * command is held between ticks. One log record is written per physics step,
 * including t = 0 and t = duration. No randomness anywhere: identical inputs
 * give bit-identical logs.
 */

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadsmc/benchmark_controllers.hpp"

namespace quadsmc {

struct SimConfig {
  double dt_physics{1e-3};
  double dt_control{1e-3};
  std::optional<double> duration;  ///< overrides the scenario duration
  bool renormalize{true};

  /// dt_control / dt_physics; throws ConfigError unless it is a positive
  /// integer (to 1e-9 relative).
  int control_ratio() const;
  void validate() const;
};

struct ControllerGains {
  ProposedGains proposed;
  GeometricGains geometric;
  EulerSmcGains euler_smc;
  QuatPdGains quat_pd;
};

/// "proposed", "geometric", "euler-smc" or "quat-pd"; ConfigError otherwise.
std::unique_ptr<Controller> make_controller(const std::string& id, const VehicleParams& believed,
                                            const ControllerGains& gains, double control_period);

struct DisturbanceModel {
  bool enabled{false};
  Vec3 axes{Vec3::Ones()};

  Disturbances at(double t) const { return eval_disturbances(t, enabled, axes); }
};

/// One RK4 step of the full 13-state model under a zero-order-held command.
/// Stage attitudes are normalized before evaluating the derivative; the
/// result is renormalized when @p renormalize is set. Throws IntegratorAbort
/// on a non-finite derivative.
VehicleState rk4_step(const VehicleState& s, const ControlCommand& cmd, const DisturbanceModel& d,
                      const VehicleParams& p, double t, double dt, bool renormalize = true);

struct LogRecord {
  double t{0.0};
  VehicleState state;
  ReferenceSample ref;
  ControlCommand command;  ///< the command held over [t, t + dt)
  Diagnostics diag;        ///< from the most recent controller tick
  bool controller_tick{false};
};

struct SimLog {
  std::string scenario_id;
  std::string controller_id;
  double dt{0.0};
  double duration{0.0};
  VehicleParams plant;
  VehicleParams believed;
  std::vector<LogRecord> records;
  bool controller_failed{false};
  double failure_time{kNaN};
  bool aborted{false};
  std::string abort_message;
};

/// Plant parameters and believed model handed to every run.
struct VehicleModels {
  VehicleParams plant{VehicleParams::true_vehicle()};
  VehicleParams believed{VehicleParams::believed_vehicle()};
};

/// Runs one closed-loop simulation. With sc.uncertainty off the plant is
/// simulated with the believed parameters, so the controller model is exact. Controller failures are logged and the run
/// continues; an integrator abort ends it with a partial log.
SimLog run_scenario(const ScenarioConfig& sc, const std::string& controller_id,
                    const ControllerGains& gains, const SimConfig& sim,
                    const VehicleModels& models = {});

}  // namespace quadsmc

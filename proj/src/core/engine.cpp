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

#include "quadsmc/engine.hpp"

#include <cmath>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

VehicleState advance(const VehicleState& s, const StateDerivative& ds, double h) {
  VehicleState out = VehicleState::from_vector(s.to_vector() + h * ds.to_vector());
  return out;
}

StateDerivative stage(const VehicleState& s, const ControlCommand& cmd, const Disturbances& d,
                      const VehicleParams& p) {
  VehicleState n = s;
  n.attitude = s.attitude.normalized();
  StateDerivative ds;
  try {
    ds = state_derivative(n, cmd, d, p);
  } catch (const DomainError& e) {
    throw IntegratorAbort(e.what());
  }
  if (!ds.to_vector().allFinite()) throw IntegratorAbort("rk4_step: non-finite derivative");
  return ds;
}

}  // namespace

const std::vector<std::string>& controller_ids() {
  static const std::vector<std::string> ids{"proposed", "geometric", "euler-smc", "quat-pd"};
  return ids;
}

int SimConfig::control_ratio() const {
  if (!(dt_physics > 0.0) || !(dt_control > 0.0)) {
    throw ConfigError("dt_physics and dt_control must be positive");
  }
  const double r = dt_control / dt_physics;
  const double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-9 * n) {
    throw ConfigError("dt_control must be an integer multiple of dt_physics");
  }
  return static_cast<int>(n);
}

void SimConfig::validate() const {
  (void)control_ratio();
  if (duration && !(*duration > 0.0)) throw ConfigError("duration must be positive");
}

std::unique_ptr<Controller> make_controller(const std::string& id, const VehicleParams& believed,
                                            const ControllerGains& gains, double control_period) {
  if (id == "proposed") return std::make_unique<ProposedController>(believed, gains.proposed, control_period);
  if (id == "geometric") return std::make_unique<GeometricController>(believed, gains.geometric, control_period);
  if (id == "euler-smc") return std::make_unique<EulerSmcController>(believed, gains.euler_smc);
  if (id == "quat-pd") return std::make_unique<QuatPdController>(believed, gains.quat_pd, control_period);
  throw ConfigError("unknown controller '" + id + "' (valid: proposed, geometric, euler-smc, quat-pd)");
}

VehicleState rk4_step(const VehicleState& s, const ControlCommand& cmd, const DisturbanceModel& d,
                      const VehicleParams& p, double t, double dt, bool renormalize) {
  if (!(dt > 0.0)) throw ConfigError("rk4_step: dt must be positive");
  const Disturbances d0 = d.at(t);
  const Disturbances dm = d.at(t + 0.5 * dt);
  const Disturbances d1 = d.at(t + dt);

  const StateDerivative k1 = stage(s, cmd, d0, p);
  const StateDerivative k2 = stage(advance(s, k1, 0.5 * dt), cmd, dm, p);
  const StateDerivative k3 = stage(advance(s, k2, 0.5 * dt), cmd, dm, p);
  const StateDerivative k4 = stage(advance(s, k3, dt), cmd, d1, p);

  const Vec13 x = s.to_vector() + (dt / 6.0) * (k1.to_vector() + 2.0 * k2.to_vector() +
                                                2.0 * k3.to_vector() + k4.to_vector());
  if (!x.allFinite()) throw IntegratorAbort("rk4_step: non-finite state");
  VehicleState out = VehicleState::from_vector(x);
  if (renormalize) out.attitude = out.attitude.normalized();
  return out;
}

SimLog run_scenario(const ScenarioConfig& sc, const std::string& controller_id,
                    const ControllerGains& gains, const SimConfig& sim, const VehicleModels& models) {
  sc.validate();
  sim.validate();
  models.plant.validate();
  models.believed.validate();

  const double duration = sim.duration.value_or(sc.duration);
  const double dt = sim.dt_physics;
  const double steps_real = duration / dt;
  const auto steps = static_cast<long>(std::llround(steps_real));
  if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-6 * steps_real) {
    throw ConfigError("duration must be an integer multiple of dt_physics");
  }
  const int ratio = sim.control_ratio();

  SimLog log;
  log.scenario_id = sc.id;
  log.controller_id = controller_id;
  log.dt = dt;
  log.duration = duration;
  log.plant = sc.uncertainty ? models.plant : models.believed;
  log.believed = models.believed;
  log.records.reserve(static_cast<size_t>(steps) + 1);

  std::unique_ptr<Controller> controller =
      make_controller(controller_id, log.believed, gains, sim.dt_control);
  ReferenceTrajectory trajectory(sc);
  const DisturbanceModel disturbance{sc.disturbance, sc.disturbance_axes};

  VehicleState state = sc.initial;
  ControlCommand cmd;
  Diagnostics diag;
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    LogRecord rec;
    rec.t = t;
    rec.state = state;
    rec.ref = trajectory.sample(t);
    if (k % ratio == 0) {
      ControlRequest req;
      try {
        req = controller->step(state, rec.ref);
      } catch (const DomainError& e) {
        log.aborted = true;
        log.abort_message = e.what();
        break;
      }
      cmd = allocate_and_saturate(req.thrust, req.torque, log.plant);
      controller->notify_applied(cmd);
      diag = req.diag;
      rec.controller_tick = true;
      if (diag.controller_failed && !log.controller_failed) {
        log.controller_failed = true;
        log.failure_time = t;
      }
    }
    rec.command = cmd;
    rec.diag = diag;
    log.records.push_back(rec);
    if (k == steps) break;
    try {
      state = rk4_step(state, cmd, disturbance, log.plant, t, dt, sim.renormalize);
    } catch (const IntegratorAbort& e) {
      log.aborted = true;
      log.abort_message = e.what();
      break;
    }
  }
  return log;
}

}  // namespace quadsmc

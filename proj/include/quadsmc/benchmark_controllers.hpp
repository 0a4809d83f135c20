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
 * @file benchmark_controllers.hpp
 * @brief Comparison controllers: geometric SE(3) tracking, Euler-angle
 * sliding mode, and quaternion PD attitude control on top of the sliding
 * mode position loop.
 */

#pragma once

#include <optional>

#include "quadsmc/proposed_controller.hpp"

namespace quadsmc {

/// Position gains are multiplied by the believed mass at construction.
struct GeometricGains {
  Vec3 k_position{5.0, 5.0, 15.0};
  Vec3 k_velocity{1.0, 1.0, 5.0};
  Vec3 k_acceleration{0.01, 0.01, 0.01};
  Vec3 k_rotation{1.2, 0.5, 0.5};
  Vec3 k_omega{0.02, 0.01, 0.01};

  void validate() const;
};

struct EulerSmcGains {
  Vec3 lambda_position{2.0, 2.0, 2.0};
  Vec3 k_position{4.0, 4.0, 30.0};
  Vec3 lambda_attitude{5.0, 5.0, 5.0};
  Vec3 k_attitude{20.0, 20.0, 20.0};

  void validate() const;
};

struct QuatPdGains {
  PositionSmcGains position;  ///< same defaults as the proposed controller
  Vec3 k_q{0.05, 0.05, 0.05};
  Vec3 k_omega{0.001, 0.001, 0.001};

  void validate() const;
};

/// e_R = 0.5 (R_dᵀ R - Rᵀ R_d)^vee.
Vec3 geometric_attitude_error(const Mat3& R, const Mat3& R_d);

class GeometricController final : public Controller {
 public:
  GeometricController(const VehicleParams& believed, const GeometricGains& gains, double control_period);

  std::string_view id() const override { return "geometric"; }
  ControlRequest step(const VehicleState& state, const ReferenceSample& ref) override;
  void notify_applied(const ControlCommand& cmd) override { last_thrust_ = cmd.f; }
  std::unique_ptr<Controller> clone() const override {
    return std::make_unique<GeometricController>(*this);
  }

 private:
  VehicleParams believed_;
  GeometricGains gains_;  ///< position gains already mass-scaled
  double period_;
  std::optional<double> last_thrust_;
  std::optional<Vec3> last_a_e_;
  std::optional<AttitudeReference> last_reference_;
};

/// Euler-angle sliding mode controller built on the small-angle model
/// (Euler rates approximated by body rates). The attitude is first converted
/// to yaw-pitch-roll angles; the controller reports failure when the Euler
/// kinematics are singular (|pitch| >= pi/2 - eps) or when the thrust law
/// f = m (a_z + g) / (cos(roll) cos(pitch)) is singular or inverted
/// (cos(roll) cos(pitch) <= eps). On a failed step it repeats the last valid
/// command; the failure flag is sticky.
class EulerSmcController final : public Controller {
 public:
  EulerSmcController(const VehicleParams& believed, const EulerSmcGains& gains,
                     double euler_epsilon = kDefaultEulerEpsilon);

  std::string_view id() const override { return "euler-smc"; }
  ControlRequest step(const VehicleState& state, const ReferenceSample& ref) override;
  std::unique_ptr<Controller> clone() const override {
    return std::make_unique<EulerSmcController>(*this);
  }

  bool failed() const { return failed_; }

  /// Desired roll and pitch from a commanded acceleration by small-angle
  /// inversion at yaw @p yaw.
  static std::pair<double, double> desired_tilt(const Vec3& accel_cmd, double yaw, double gravity);

 private:
  VehicleParams believed_;
  EulerSmcGains gains_;
  double eps_;
  bool failed_{false};
  std::optional<ControlRequest> last_valid_;
};

class QuatPdController final : public Controller {
 public:
  QuatPdController(const VehicleParams& believed, const QuatPdGains& gains, double control_period);

  std::string_view id() const override { return "quat-pd"; }
  ControlRequest step(const VehicleState& state, const ReferenceSample& ref) override;
  void notify_applied(const ControlCommand& cmd) override { stage_.notify_applied(cmd); }
  std::unique_ptr<Controller> clone() const override {
    return std::make_unique<QuatPdController>(*this);
  }

  /// tau = -K_q vec(q_e) - K_w w_e + w x J w + J alpha_d, no cover selection.
  static Vec3 pd_torque(const VehicleState& state, const AttitudeReference& ar,
                        const VehicleParams& believed, const QuatPdGains& gains);

 private:
  VehicleParams believed_;
  QuatPdGains gains_;
  PositionStage stage_;
};

}  // namespace quadsmc

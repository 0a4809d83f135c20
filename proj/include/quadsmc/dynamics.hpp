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
 * @file dynamics.hpp
 * @brief Quadrotor plant: rigid-body dynamics, rotor allocation, saturation
 * and the external disturbance signals.
 */

#pragma once

#include <array>

#include "quadsmc/mathcore.hpp"

namespace quadsmc {

using Vec13 = Eigen::Matrix<double, 13, 1>;

struct VehicleState {
  Vec3 position{Vec3::Zero()};          ///< [m], inertial
  Vec3 velocity{Vec3::Zero()};          ///< [m/s], inertial
  Quat attitude{};                      ///< unit, body -> inertial
  Vec3 angular_velocity{Vec3::Zero()};  ///< [rad/s], body

  Vec13 to_vector() const;
  static VehicleState from_vector(const Vec13& x);
  bool finite() const;
};

/// Time derivative of VehicleState. attitude_rate is a tangent vector and is
/// not unit.
struct StateDerivative {
  Vec3 velocity{Vec3::Zero()};
  Vec3 acceleration{Vec3::Zero()};
  Quat attitude_rate{0.0, Vec3::Zero()};
  Vec3 angular_acceleration{Vec3::Zero()};

  Vec13 to_vector() const;
};

struct VehicleParams {
  double mass{0.027};                                    ///< [kg]
  Vec3 inertia{1.66e-5, 1.66e-5, 2.93e-5};               ///< diagonal [kg m^2]
  double thrust_coeff{2.88e-8};                          ///< c_t [N s^2]
  double torque_coeff{7.24e-10};                         ///< c_q [N m s^2]
  double arm_length{0.092};                              ///< l [m]
  double arm_angle{0.7853981633974483};                  ///< beta [rad]
  double f_min{0.01};                                    ///< per rotor [N]
  double f_max{0.15};                                    ///< per rotor [N]
  double gravity{9.81};                                  ///< [m/s^2]

  /// Table values of the vehicle the plant simulates.
  static VehicleParams true_vehicle();
  /// Deliberately wrong mass/inertia the controllers are given.
  static VehicleParams believed_vehicle();

  Mat3 inertia_matrix() const { return inertia.asDiagonal(); }
  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

struct ControlCommand {
  Vec4 u{Vec4::Zero()};              ///< per-rotor thrust after saturation [N]
  double f_cmd{0.0};                 ///< requested total thrust [N]
  Vec3 tau_cmd{Vec3::Zero()};        ///< requested body moments [N m]
  double f{0.0};                     ///< realized total thrust, row 1 of G u
  Vec3 tau{Vec3::Zero()};            ///< realized moments, rows 2-4 of G u
  std::array<bool, 4> saturated{};   ///< rotor i was clamped

  bool any_saturated() const { return saturated[0] || saturated[1] || saturated[2] || saturated[3]; }
};

struct Disturbances {
  Vec3 linear{Vec3::Zero()};   ///< d_a [m/s^2]
  Vec3 angular{Vec3::Zero()};  ///< d_alpha [rad/s^2]
};

/// Continuous dynamics driven by the realized wrench (cmd.f, cmd.tau).
/// Throws DomainError on non-finite input or a non-unit attitude.
StateDerivative state_derivative(const VehicleState& s, const ControlCommand& cmd,
                                 const Disturbances& d, const VehicleParams& p);

/// Maps rotor thrusts u to [f; tau] = G u. Throws DomainError when beta is
/// outside (0, pi/2) or G is numerically singular.
Mat4 allocation_matrix(const VehicleParams& p);

/// u = clamp(G^-1 [f; tau], f_min, f_max), then the realized wrench G u.
ControlCommand allocate_and_saturate(double f, const Vec3& tau, const VehicleParams& p);

/// Sinusoidal disturbances; @p axes masks the axes they act on.
Disturbances eval_disturbances(double t, bool enabled, const Vec3& axes = Vec3::Ones());

/// Rotor speed that produces thrust u, sqrt(u / c_t) [rad/s]. Diagnostic only.
Vec4 rotor_speeds(const Vec4& u, const VehicleParams& p);

}  // namespace quadsmc

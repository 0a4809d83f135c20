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

#include "quadsmc/benchmark_controllers.hpp"

#include <cmath>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

void require_nonnegative(const Vec3& v, const char* name) {
  if (!(v.minCoeff() >= 0.0)) throw ConfigError(std::string(name) + " must be nonnegative");
}

void require_positive(const Vec3& v, const char* name) {
  if (!(v.minCoeff() > 0.0)) throw ConfigError(std::string(name) + " must be positive");
}

}  // namespace

void GeometricGains::validate() const {
  require_nonnegative(k_position, "geometric K_xi");
  require_nonnegative(k_velocity, "geometric K_v");
  require_nonnegative(k_acceleration, "geometric K_j");
  require_nonnegative(k_rotation, "geometric K_R");
  require_nonnegative(k_omega, "geometric K_omega");
}

void EulerSmcGains::validate() const {
  require_positive(lambda_position, "euler-smc lambda_xi");
  require_nonnegative(k_position, "euler-smc K_xi");
  require_positive(lambda_attitude, "euler-smc lambda_phi");
  require_nonnegative(k_attitude, "euler-smc K_phi");
}

void QuatPdGains::validate() const {
  position.validate();
  require_nonnegative(k_q, "quat-pd K_q");
  require_nonnegative(k_omega, "quat-pd K_omega");
}

Vec3 geometric_attitude_error(const Mat3& R, const Mat3& R_d) {
  return 0.5 * vee_skew(R_d.transpose() * R - R.transpose() * R_d);
}

// ---------------------------------------------------------------------------
// Geometric

GeometricController::GeometricController(const VehicleParams& believed, const GeometricGains& gains,
                                         double control_period)
    : believed_(believed), gains_(gains), period_(control_period) {
  gains.validate();
  gains_.k_position *= believed.mass;
  gains_.k_velocity *= believed.mass;
  gains_.k_acceleration *= believed.mass;
}

ControlRequest GeometricController::step(const VehicleState& state, const ReferenceSample& ref) {
  if (!state.finite()) throw DomainError("geometric controller: non-finite state");
  const double m = believed_.mass;
  const Vec3 xi_e = state.position - ref.position;
  const Vec3 v_e = state.velocity - ref.velocity;
  const Vec3 a_e = last_thrust_ ? model_acceleration_error(state, ref, *last_thrust_, believed_)
                                : Vec3::Zero();
  const Vec3 j_e = last_a_e_ ? Vec3((a_e - *last_a_e_) / period_) : Vec3::Zero();

  // Desired force and its derivatives; the K_j snap-error term of the second
  // derivative is not observable and is left out.
  KappaChain force;
  force.kappa = -gains_.k_position.cwiseProduct(xi_e) - gains_.k_velocity.cwiseProduct(v_e) -
                gains_.k_acceleration.cwiseProduct(a_e) + m * believed_.gravity * Vec3::UnitZ() +
                m * ref.acceleration;
  force.kappa_dot = -gains_.k_position.cwiseProduct(v_e) - gains_.k_velocity.cwiseProduct(a_e) -
                    gains_.k_acceleration.cwiseProduct(j_e) + m * ref.jerk;
  force.kappa_ddot = -gains_.k_position.cwiseProduct(a_e) - gains_.k_velocity.cwiseProduct(j_e) +
                     m * ref.snap;

  const AttitudeReferenceResult res = attitude_reference(force, ref, last_reference_);
  const AttitudeReference ar = (res.flagged() && last_reference_) ? *last_reference_ : res.ref;
  last_reference_ = ar;
  last_a_e_ = a_e;

  const Mat3 R = quat_to_rotmat(state.attitude);
  const Vec3& w = state.angular_velocity;
  const Vec3& J = believed_.inertia;
  const Mat3 RtRd = R.transpose() * ar.R_d;
  const Vec3 e_R = geometric_attitude_error(R, ar.R_d);
  const Vec3 e_w = w - RtRd * ar.omega_d;

  ControlRequest req;
  req.thrust = force.kappa.dot(R.col(2));
  req.torque = -gains_.k_rotation.cwiseProduct(e_R) - gains_.k_omega.cwiseProduct(e_w) +
               w.cross(J.cwiseProduct(w)) -
               J.cwiseProduct(hat(w) * RtRd * ar.omega_d - RtRd * ar.alpha_d);
  req.diag.q_d = ar.q_d;
  req.diag.q_e = quat_mul(quat_conj(ar.q_d), state.attitude);
  req.diag.omega_d = ar.omega_d;
  req.diag.alpha_d = ar.alpha_d;
  req.diag.omega_e = e_w;
  req.diag.reference_degenerate = res.flagged();
  return req;
}

// ---------------------------------------------------------------------------
// Euler SMC

EulerSmcController::EulerSmcController(const VehicleParams& believed, const EulerSmcGains& gains,
                                       double euler_epsilon)
    : believed_(believed), gains_(gains), eps_(euler_epsilon) {
  gains.validate();
}

std::pair<double, double> EulerSmcController::desired_tilt(const Vec3& accel_cmd, double yaw,
                                                           double gravity) {
  const double s = std::sin(yaw), c = std::cos(yaw);
  const double roll = (accel_cmd.x() * s - accel_cmd.y() * c) / gravity;
  const double pitch = (accel_cmd.x() * c + accel_cmd.y() * s) / gravity;
  return {roll, pitch};
}

ControlRequest EulerSmcController::step(const VehicleState& state, const ReferenceSample& ref) {
  if (!state.finite()) throw DomainError("euler-smc controller: non-finite state");
  const EulerAngles eta = quat_to_euler(state.attitude).angles;
  const double tilt = std::cos(eta.roll) * std::cos(eta.pitch);

  bool singular = !(tilt > eps_);
  try {
    (void)euler_rate_matrix(eta, eps_);
  } catch (const SingularityError&) {
    singular = true;
  }
  if (singular) {
    failed_ = true;
    ControlRequest held = last_valid_.value_or(ControlRequest{});
    held.diag.controller_failed = true;
    return held;
  }

  const Vec3 xi_e = state.position - ref.position;
  const Vec3 v_e = state.velocity - ref.velocity;
  const Vec3 s = v_e + gains_.lambda_position.cwiseProduct(xi_e);
  const Vec3 a_cmd = ref.acceleration - gains_.lambda_position.cwiseProduct(v_e) -
                     gains_.k_position.cwiseProduct(s.array().tanh().matrix());

  const Vec3& h = ref.heading;
  const double yaw_d = std::atan2(h.y(), h.x());
  const double yaw_rate_d = h.x() * ref.heading_rate.y() - h.y() * ref.heading_rate.x();
  const double yaw_accel_d = h.x() * ref.heading_accel.y() - h.y() * ref.heading_accel.x();
  const auto [roll_d, pitch_d] = desired_tilt(a_cmd, yaw_d, believed_.gravity);

  // Small-angle model: Euler rates taken equal to body rates; the desired
  // roll and pitch are treated as constant over a step.
  const Vec3& w = state.angular_velocity;
  const Vec3 eta_e(wrap_angle(eta.roll - roll_d), eta.pitch - pitch_d, wrap_angle(eta.yaw - yaw_d));
  const Vec3 eta_rate_d(0.0, 0.0, yaw_rate_d);
  const Vec3 eta_accel_d(0.0, 0.0, yaw_accel_d);
  const Vec3 eta_rate_e = w - eta_rate_d;
  const Vec3 s_att = eta_rate_e + gains_.lambda_attitude.cwiseProduct(eta_e);
  const Vec3 eta_accel = eta_accel_d - gains_.lambda_attitude.cwiseProduct(eta_rate_e) -
                         gains_.k_attitude.cwiseProduct(s_att.array().tanh().matrix());

  const Vec3& J = believed_.inertia;
  ControlRequest req;
  req.thrust = believed_.mass * (a_cmd.z() + believed_.gravity) / tilt;
  req.torque = {J.x() * eta_accel.x() - w.y() * w.z() * (J.y() - J.z()),
                J.y() * eta_accel.y() - w.x() * w.z() * (J.z() - J.x()),
                J.z() * eta_accel.z() - w.x() * w.y() * (J.x() - J.y())};
  req.diag.s_xi = s;
  req.diag.q_d = euler_to_quat({roll_d, pitch_d, yaw_d});
  req.diag.q_e = quat_mul(quat_conj(req.diag.q_d), state.attitude);
  req.diag.omega_d = eta_rate_d;
  req.diag.alpha_d = eta_accel_d;
  req.diag.omega_e = eta_rate_e;
  req.diag.controller_failed = failed_;
  last_valid_ = req;
  return req;
}

// ---------------------------------------------------------------------------
// Quaternion PD

QuatPdController::QuatPdController(const VehicleParams& believed, const QuatPdGains& gains,
                                   double control_period)
    : believed_(believed), gains_(gains), stage_(believed, gains.position, control_period) {
  gains_.validate();
}

Vec3 QuatPdController::pd_torque(const VehicleState& state, const AttitudeReference& ar,
                                 const VehicleParams& believed, const QuatPdGains& gains) {
  const Quat q_e = quat_mul(quat_conj(ar.q_d), state.attitude);
  const Vec3& w = state.angular_velocity;
  const Vec3& J = believed.inertia;
  return -gains.k_q.cwiseProduct(q_e.v) - gains.k_omega.cwiseProduct(w - ar.omega_d) +
         w.cross(J.cwiseProduct(w)) + J.cwiseProduct(ar.alpha_d);
}

ControlRequest QuatPdController::step(const VehicleState& state, const ReferenceSample& ref) {
  const PositionStage::Output pos = stage_.update(state, ref);

  ControlRequest req;
  req.thrust = pos.thrust;
  req.torque = pd_torque(state, pos.attitude, believed_, gains_);
  req.diag.s_xi = pos.chain.s;
  req.diag.q_d = pos.attitude.q_d;
  req.diag.q_e = quat_mul(quat_conj(pos.attitude.q_d), state.attitude);
  req.diag.omega_d = pos.attitude.omega_d;
  req.diag.alpha_d = pos.attitude.alpha_d;
  req.diag.omega_e = state.angular_velocity - pos.attitude.omega_d;
  req.diag.reference_degenerate = pos.degenerate;
  return req;
}

}  // namespace quadsmc

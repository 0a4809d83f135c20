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

#include "quadsmc/proposed_controller.hpp"

#include <cmath>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

Vec3 tanh_vec(const Vec3& x) { return x.array().tanh().matrix(); }

Vec3 sech2_vec(const Vec3& x) {
  return (1.0 / x.array().cosh().square()).matrix();
}

// Any unit vector perpendicular to b.
Vec3 any_perpendicular(const Vec3& b) {
  const Vec3 trial = std::abs(b.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return b.cross(trial).normalized();
}

}  // namespace

void PositionSmcGains::validate() const {
  if (!(lambda.minCoeff() > 0.0)) throw ConfigError("position lambda must be positive");
  if (!(k.minCoeff() >= 0.0)) throw ConfigError("position K must be nonnegative");
}

void AttitudeSmcGains::validate() const {
  if (!(lambda.minCoeff() > 0.0)) throw ConfigError("attitude lambda must be positive");
  if (!(k.minCoeff() >= 0.0)) throw ConfigError("attitude K must be nonnegative");
}

PositionSmcResult position_smc(const VehicleState& state, const ReferenceSample& ref,
                               const VehicleParams& believed, const PositionSmcGains& gains) {
  if (!state.finite()) throw DomainError("position_smc: non-finite state");
  const Vec3 xi_e = state.position - ref.position;
  const Vec3 v_e = state.velocity - ref.velocity;

  PositionSmcResult out;
  out.chain.s = v_e + gains.lambda.cwiseProduct(xi_e);
  out.chain.kappa = believed.mass * (ref.acceleration - gains.lambda.cwiseProduct(v_e) +
                                     believed.gravity * Vec3::UnitZ() -
                                     gains.k.cwiseProduct(tanh_vec(out.chain.s)));
  out.thrust = out.chain.kappa.dot(body_z_axis(state.attitude));
  return out;
}

KappaRates kappa_derivatives(const Vec3& s, const Vec3& v_e, const Vec3& a_e, const Vec3& j_e,
                             const ReferenceSample& ref, double mass,
                             const PositionSmcGains& gains) {
  KappaRates r;
  r.s_dot = a_e + gains.lambda.cwiseProduct(v_e);
  r.s_ddot = j_e + gains.lambda.cwiseProduct(a_e);
  const Vec3 sech2 = sech2_vec(s);
  const Vec3 th = tanh_vec(s);
  r.kappa_dot = mass * (ref.jerk - gains.lambda.cwiseProduct(a_e) -
                        gains.k.cwiseProduct(sech2.cwiseProduct(r.s_dot)));
  // Differentiating kappa_dot gives s_dot o s_dot in the tanh term, not s_ddot.
  const Vec3 reaching_rate = sech2.cwiseProduct(r.s_ddot) -
                             2.0 * sech2.cwiseProduct(th).cwiseProduct(r.s_dot).cwiseProduct(r.s_dot);
  r.kappa_ddot = mass * (ref.snap - gains.lambda.cwiseProduct(j_e) -
                         gains.k.cwiseProduct(reaching_rate));
  return r;
}

Vec3 model_acceleration_error(const VehicleState& state, const ReferenceSample& ref, double thrust,
                              const VehicleParams& believed) {
  return -believed.gravity * Vec3::UnitZ() +
         (thrust / believed.mass) * body_z_axis(state.attitude) - ref.acceleration;
}

AttitudeReferenceResult attitude_reference(const KappaChain& chain, const ReferenceSample& ref,
                                           const std::optional<AttitudeReference>& prev) {
  AttitudeReferenceResult out;
  const std::optional<Quat> prev_q = prev ? std::optional<Quat>(prev->q_d) : std::nullopt;

  UnitVectorChain b3{Vec3::UnitZ(), Vec3::Zero(), Vec3::Zero()};
  if (!(chain.kappa.norm() >= kKappaMin)) {
    out.kappa_degenerate = true;
    if (prev) {
      out.ref = *prev;
      return out;
    }
  } else {
    b3 = normalize_with_derivatives(chain.kappa, chain.kappa_dot, chain.kappa_ddot);
  }

  const Vec3& b1r = ref.heading;
  const Vec3 nu = b3.value.cross(b1r);
  Mat3 R, R_dot = Mat3::Zero(), R_ddot = Mat3::Zero();

  if (out.kappa_degenerate || !(nu.norm() >= kNuMin)) {
    out.heading_degenerate = !out.kappa_degenerate;
    Vec3 b2 = prev ? Vec3(prev->R_d.col(1)) : any_perpendicular(b3.value);
    Vec3 b1 = b2.cross(b3.value);
    if (!(b1.norm() >= kNuMin)) b1 = any_perpendicular(b3.value);
    b1.normalize();
    b2 = b3.value.cross(b1);
    R << b1, b2, b3.value;
  } else {
    const Vec3 nu_dot = b3.rate.cross(b1r) + b3.value.cross(ref.heading_rate);
    // The heading terms use b1r and its derivatives, the vector nu is built from.
    const Vec3 nu_ddot = b3.accel.cross(b1r) + b3.value.cross(ref.heading_accel) +
                         2.0 * b3.rate.cross(ref.heading_rate);
    const UnitVectorChain b2 = normalize_with_derivatives(nu, nu_dot, nu_ddot);
    const Vec3 b1 = b2.value.cross(b3.value);
    const Vec3 b1_dot = b2.rate.cross(b3.value) + b2.value.cross(b3.rate);
    const Vec3 b1_ddot = b2.accel.cross(b3.value) + b2.value.cross(b3.accel) +
                         2.0 * b2.rate.cross(b3.rate);
    R << b1, b2.value, b3.value;
    R_dot << b1_dot, b2.rate, b3.rate;
    R_ddot << b1_ddot, b2.accel, b3.accel;
  }

  out.ref.R_d = R;
  out.ref.q_d = rotmat_to_quat(R, prev_q);
  out.ref.omega_d = vee_skew(R.transpose() * R_dot);
  const Mat3 W = hat(out.ref.omega_d);
  out.ref.alpha_d = vee_skew(R.transpose() * R_ddot - W * W);
  return out;
}

AttitudeSmcResult attitude_smc(const VehicleState& state, const AttitudeReference& ar,
                               const VehicleParams& believed, const AttitudeSmcGains& gains) {
  AttitudeSmcResult out;
  const Vec3& w = state.angular_velocity;
  out.q_e = quat_mul(quat_conj(ar.q_d), state.attitude);
  out.omega_e = w - ar.omega_d;

  const double sgn = sgn_plus(out.q_e.w);
  const Vec3 qv_dot = 0.5 * (out.q_e.w * out.omega_e + out.q_e.v.cross(out.omega_e));
  out.s_q = out.omega_e + sgn * gains.lambda.cwiseProduct(out.q_e.v);

  const Vec3& J = believed.inertia;
  out.torque = J.cwiseProduct(ar.alpha_d) + w.cross(J.cwiseProduct(w)) -
               sgn * J.cwiseProduct(gains.lambda.cwiseProduct(qv_dot)) -
               gains.k.cwiseProduct(tanh_vec(out.s_q));
  return out;
}

double lyapunov_value(const Vec3& s_xi, const Vec3& s_q, const VehicleParams& believed) {
  const Vec3 s_delta = s_q - tanh_vec(s_q);
  return 0.5 * s_xi.dot(s_xi) + 0.5 * s_delta.dot(believed.inertia.cwiseProduct(s_delta));
}

PositionStage::PositionStage(const VehicleParams& believed, const PositionSmcGains& gains,
                             double control_period)
    : believed_(believed), gains_(gains), period_(control_period) {
  gains_.validate();
  if (!(period_ > 0.0)) throw ConfigError("control period must be positive");
}

PositionStage::Output PositionStage::update(const VehicleState& state, const ReferenceSample& ref) {
  const PositionSmcResult pos = position_smc(state, ref, believed_, gains_);

  Output out;
  out.thrust = pos.thrust;
  out.chain = pos.chain;
  // Acceleration error from the model with the thrust applied over the last
  // period (the current request on the very first step); jerk error is its
  // backward difference.
  out.a_e = model_acceleration_error(state, ref, last_thrust_.value_or(pos.thrust), believed_);
  out.j_e = last_a_e_ ? Vec3((out.a_e - *last_a_e_) / period_) : Vec3::Zero();

  const Vec3 v_e = state.velocity - ref.velocity;
  const KappaRates rates =
      kappa_derivatives(pos.chain.s, v_e, out.a_e, out.j_e, ref, believed_.mass, gains_);
  out.chain.kappa_dot = rates.kappa_dot;
  out.chain.kappa_ddot = rates.kappa_ddot;
  out.chain.s_dot = rates.s_dot;
  out.chain.s_ddot = rates.s_ddot;

  const AttitudeReferenceResult ar = attitude_reference(out.chain, ref, last_reference_);
  out.degenerate = ar.flagged();
  out.attitude = (ar.flagged() && last_reference_) ? *last_reference_ : ar.ref;

  last_a_e_ = out.a_e;
  last_reference_ = out.attitude;
  return out;
}

ProposedController::ProposedController(const VehicleParams& believed, const ProposedGains& gains,
                                       double control_period)
    : believed_(believed), gains_(gains), stage_(believed, gains.position, control_period) {
  gains_.attitude.validate();
}

ControlRequest ProposedController::step(const VehicleState& state, const ReferenceSample& ref) {
  const PositionStage::Output pos = stage_.update(state, ref);
  const AttitudeSmcResult att = attitude_smc(state, pos.attitude, believed_, gains_.attitude);

  ControlRequest req;
  req.thrust = pos.thrust;
  req.torque = att.torque;
  req.diag.s_xi = pos.chain.s;
  req.diag.s_q = att.s_q;
  req.diag.lyapunov = lyapunov_value(pos.chain.s, att.s_q, believed_);
  req.diag.q_d = pos.attitude.q_d;
  req.diag.q_e = att.q_e;
  req.diag.omega_d = pos.attitude.omega_d;
  req.diag.alpha_d = pos.attitude.alpha_d;
  req.diag.omega_e = att.omega_e;
  req.diag.reference_degenerate = pos.degenerate;
  return req;
}

}  // namespace quadsmc

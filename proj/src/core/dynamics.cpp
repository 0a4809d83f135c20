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

#include "quadsmc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {
constexpr double kMaxConditionNumber = 1e12;
}  // namespace

Vec13 VehicleState::to_vector() const {
  Vec13 x;
  x << position, velocity, attitude.w, attitude.v, angular_velocity;
  return x;
}

VehicleState VehicleState::from_vector(const Vec13& x) {
  VehicleState s;
  s.position = x.segment<3>(0);
  s.velocity = x.segment<3>(3);
  s.attitude = {x(6), x.segment<3>(7)};
  s.angular_velocity = x.segment<3>(10);
  return s;
}

bool VehicleState::finite() const {
  return position.allFinite() && velocity.allFinite() && all_finite(attitude) &&
         angular_velocity.allFinite();
}

Vec13 StateDerivative::to_vector() const {
  Vec13 x;
  x << velocity, acceleration, attitude_rate.w, attitude_rate.v, angular_acceleration;
  return x;
}

VehicleParams VehicleParams::true_vehicle() { return {}; }

VehicleParams VehicleParams::believed_vehicle() {
  VehicleParams p;
  p.mass = 0.0216;
  p.inertia = {1.992e-5, 1.4940e-5, 3.0765e-5};
  return p;
}

void VehicleParams::validate() const {
  if (!(mass > 0.0)) throw ConfigError("vehicle mass must be positive");
  if (!(inertia.minCoeff() > 0.0)) throw ConfigError("inertia entries must be positive");
  if (!(thrust_coeff > 0.0)) throw ConfigError("thrust coefficient must be positive");
  if (!(f_min >= 0.0 && f_min < f_max)) throw ConfigError("rotor limits need 0 <= f_min < f_max");
  if (!(arm_length > 0.0)) throw ConfigError("arm length must be positive");
  if (!(arm_angle > 0.0 && arm_angle < std::numbers::pi / 2.0)) {
    throw ConfigError("arm angle must lie in (0, pi/2)");
  }
  if (!(gravity > 0.0)) throw ConfigError("gravity must be positive");
}

StateDerivative state_derivative(const VehicleState& s, const ControlCommand& cmd,
                                 const Disturbances& d, const VehicleParams& p) {
  if (!s.finite() || !std::isfinite(cmd.f) || !cmd.tau.allFinite() || !d.linear.allFinite() ||
      !d.angular.allFinite()) {
    throw DomainError("state_derivative: non-finite input");
  }
  if (std::abs(s.attitude.norm() - 1.0) > 1e-6) {
    throw DomainError("state_derivative: attitude quaternion is not unit");
  }
  const Vec3& w = s.angular_velocity;
  const Vec3 Jw = p.inertia.cwiseProduct(w);

  StateDerivative ds;
  ds.velocity = s.velocity;
  ds.acceleration = -p.gravity * Vec3::UnitZ() + (cmd.f / p.mass) * body_z_axis(s.attitude) + d.linear;
  ds.attitude_rate = 0.5 * quat_mul(s.attitude, Quat::pure(w));
  ds.angular_acceleration = (cmd.tau - w.cross(Jw)).cwiseQuotient(p.inertia) + d.angular;
  return ds;
}

Mat4 allocation_matrix(const VehicleParams& p) {
  if (!(p.arm_angle > 0.0 && p.arm_angle < std::numbers::pi / 2.0)) {
    throw DomainError("allocation_matrix: arm angle must lie in (0, pi/2)");
  }
  const double ls = p.arm_length * std::sin(p.arm_angle);
  // Pitch row uses l cos(beta) in every entry; at beta = 45 deg it equals
  // l sin(beta).
  const double lc = p.arm_length * std::cos(p.arm_angle);
  const double k = p.torque_coeff / p.thrust_coeff;
  Mat4 G;
  G << 1.0, 1.0, 1.0, 1.0,
      ls, -ls, -ls, ls,
      -lc, lc, -lc, lc,
      -k, -k, k, k;
  Eigen::JacobiSVD<Mat4> svd(G);
  const auto& sv = svd.singularValues();
  if (!(sv(3) > 0.0) || sv(0) / sv(3) > kMaxConditionNumber) {
    throw DomainError("allocation_matrix: G is singular");
  }
  return G;
}

ControlCommand allocate_and_saturate(double f, const Vec3& tau, const VehicleParams& p) {
  const Mat4 G = allocation_matrix(p);
  const Vec4 wrench(f, tau.x(), tau.y(), tau.z());
  const Vec4 raw = G.partialPivLu().solve(wrench);

  ControlCommand cmd;
  cmd.f_cmd = f;
  cmd.tau_cmd = tau;
  for (int i = 0; i < 4; ++i) {
    // NaN requests clamp to f_min.
    const double ui = std::isnan(raw(i)) ? p.f_min : std::clamp(raw(i), p.f_min, p.f_max);
    cmd.saturated[i] = !(raw(i) > p.f_min && raw(i) < p.f_max);
    cmd.u(i) = ui;
  }
  const Vec4 realized = G * cmd.u;
  cmd.f = realized(0);
  cmd.tau = realized.tail<3>();
  return cmd;
}

Disturbances eval_disturbances(double t, bool enabled, const Vec3& axes) {
  Disturbances d;
  if (!enabled) return d;
  const double pi = std::numbers::pi;
  d.linear = 2.0 * std::sin(pi * t + pi / 2.0) * axes;
  d.angular = std::sin(pi * t) * axes;
  return d;
}

Vec4 rotor_speeds(const Vec4& u, const VehicleParams& p) {
  return (u.cwiseMax(0.0) / p.thrust_coeff).cwiseSqrt();
}

}  // namespace quadsmc

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "quadsmc/dynamics.hpp"
#include "quadsmc/errors.hpp"
#include "test_support.hpp"

namespace quadsmc {
namespace {

using testing::random_unit_quat;
using testing::random_vec3;
using testing::uniform;

const VehicleParams kTrue = VehicleParams::true_vehicle();

ControlCommand wrench(double f, const Vec3& tau = Vec3::Zero()) {
  ControlCommand c;
  c.f_cmd = c.f = f;
  c.tau_cmd = c.tau = tau;
  return c;
}

TEST(Params, TableValues) {
  EXPECT_DOUBLE_EQ(kTrue.mass, 0.027);
  EXPECT_EQ(kTrue.inertia, Vec3(1.66e-5, 1.66e-5, 2.93e-5));
  EXPECT_DOUBLE_EQ(kTrue.thrust_coeff, 2.88e-8);
  EXPECT_DOUBLE_EQ(kTrue.torque_coeff, 7.24e-10);
  EXPECT_DOUBLE_EQ(kTrue.arm_length, 0.092);
  EXPECT_DOUBLE_EQ(kTrue.arm_angle, std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(kTrue.f_min, 0.01);
  EXPECT_DOUBLE_EQ(kTrue.f_max, 0.15);
  EXPECT_DOUBLE_EQ(kTrue.gravity, 9.81);

  const VehicleParams b = VehicleParams::believed_vehicle();
  EXPECT_DOUBLE_EQ(b.mass, 0.0216);
  EXPECT_EQ(b.inertia, Vec3(1.992e-5, 1.494e-5, 3.0765e-5));
}

TEST(Params, Validation) {
  VehicleParams p = kTrue;
  p.mass = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = kTrue;
  p.inertia.y() = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = kTrue;
  p.f_min = 0.2;
  EXPECT_THROW(p.validate(), ConfigError);
  p = kTrue;
  p.thrust_coeff = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_NO_THROW(kTrue.validate());
}

TEST(StateDerivative, HoverEquilibrium) {
  VehicleState s;
  s.position = {1, 2, 3};
  const StateDerivative d = state_derivative(s, wrench(kTrue.mass * kTrue.gravity), {}, kTrue);
  EXPECT_LT(d.to_vector().norm(), 1e-15);
}

TEST(StateDerivative, FreeFall) {
  const StateDerivative d = state_derivative(VehicleState{}, wrench(0.0), {}, kTrue);
  EXPECT_EQ(d.acceleration, Vec3(0, 0, -9.81));
  EXPECT_EQ(d.velocity, Vec3::Zero());
}

TEST(StateDerivative, PrincipalAxisSpin) {
  VehicleState s;
  s.angular_velocity = {0, 0, 10};
  const StateDerivative d = state_derivative(s, wrench(0.0), {}, kTrue);
  EXPECT_EQ(d.angular_acceleration, Vec3::Zero());
  EXPECT_NEAR(d.attitude_rate.z(), 5.0, 1e-15);
}

TEST(StateDerivative, ThrustAlongBodyZAndDisturbances) {
  for (int i = 0; i < 100; ++i) {
    VehicleState s;
    s.attitude = random_unit_quat();
    s.angular_velocity = random_vec3(5.0);
    const double f = uniform(0.0, 0.6);
    const Vec3 tau = random_vec3(1e-3);
    Disturbances d{random_vec3(2.0), random_vec3(1.0)};
    const StateDerivative ds = state_derivative(s, wrench(f, tau), d, kTrue);
    const Vec3 a = -kTrue.gravity * Vec3::UnitZ() + f / kTrue.mass * quat_to_rotmat(s.attitude).col(2) + d.linear;
    ASSERT_LT((ds.acceleration - a).norm(), 1e-12);
    const Vec3 J = kTrue.inertia;
    const Vec3 w = s.angular_velocity;
    const Vec3 alpha = (tau - w.cross(J.cwiseProduct(w))).cwiseQuotient(J) + d.angular;
    ASSERT_LT((ds.angular_acceleration - alpha).norm(), 1e-9);
    const Quat qdot = 0.5 * quat_mul(s.attitude, Quat::pure(w));
    ASSERT_LT((ds.attitude_rate - qdot).coeffs().norm(), 1e-15);
  }
}

TEST(StateDerivative, RejectsBadInputs) {
  VehicleState s;
  s.attitude = Quat(1.01, 0, 0, 0);
  EXPECT_THROW(state_derivative(s, wrench(0.2), {}, kTrue), DomainError);
  s = VehicleState{};
  s.velocity.x() = std::nan("");
  EXPECT_THROW(state_derivative(s, wrench(0.2), {}, kTrue), DomainError);
  EXPECT_THROW(state_derivative(VehicleState{}, wrench(INFINITY), {}, kTrue), DomainError);
}

TEST(StateVector, RoundTrip) {
  VehicleState s;
  s.position = random_vec3();
  s.velocity = random_vec3();
  s.attitude = random_unit_quat();
  s.angular_velocity = random_vec3();
  const VehicleState back = VehicleState::from_vector(s.to_vector());
  EXPECT_EQ(back.to_vector(), s.to_vector());
}

TEST(Allocation, SignPatternAndRowSums) {
  const Mat4 G = allocation_matrix(kTrue);
  const double ls = kTrue.arm_length * std::sin(kTrue.arm_angle);
  const double lc = kTrue.arm_length * std::cos(kTrue.arm_angle);
  const double k = kTrue.torque_coeff / kTrue.thrust_coeff;
  Mat4 expected;
  expected << 1, 1, 1, 1,
      ls, -ls, -ls, ls,
      -lc, lc, -lc, lc,
      -k, -k, k, k;
  EXPECT_EQ(G, expected);
  for (int r = 1; r < 4; ++r) EXPECT_EQ(G.row(r).sum(), 0.0);
}

TEST(Allocation, InvertibleForTableValues) {
  const Mat4 G = allocation_matrix(kTrue);
  EXPECT_LT((G * G.inverse() - Mat4::Identity()).norm(), 1e-12);
}

TEST(Allocation, EqualRotorsGivePureThrust) {
  const Vec4 u = Vec4::Constant(0.07);
  const Vec4 w = allocation_matrix(kTrue) * u;
  EXPECT_NEAR(w[0], 0.28, 1e-15);
  EXPECT_EQ(w.tail<3>(), Vec3::Zero());
}

TEST(Allocation, RejectsDegenerateGeometry) {
  VehicleParams p = kTrue;
  p.arm_angle = 0.0;
  EXPECT_THROW(allocation_matrix(p), DomainError);
  p.arm_angle = std::numbers::pi / 2;
  EXPECT_THROW(allocation_matrix(p), DomainError);
}

TEST(Saturation, HoverTrueMass) {
  const double f = 0.027 * 9.81;
  const ControlCommand c = allocate_and_saturate(f, Vec3::Zero(), kTrue);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(c.u[i], f / 4, 1e-15);
    EXPECT_NEAR(c.u[i], 0.06622, 1e-5);
    EXPECT_FALSE(c.saturated[i]);
  }
  EXPECT_NEAR(c.f, f, 1e-15);
  EXPECT_FALSE(c.any_saturated());
}

TEST(Saturation, UpperClamp) {
  const ControlCommand c = allocate_and_saturate(1.0, Vec3::Zero(), kTrue);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(c.u[i], 0.15);
    EXPECT_TRUE(c.saturated[i]);
  }
  EXPECT_NEAR(c.f, 0.6, 1e-15);
  EXPECT_EQ(c.f_cmd, 1.0);
}

TEST(Saturation, LowerClamp) {
  const ControlCommand c = allocate_and_saturate(0.0, Vec3::Zero(), kTrue);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(c.u[i], 0.01);
    EXPECT_TRUE(c.saturated[i]);
  }
  EXPECT_NEAR(c.f, 0.04, 1e-15);
}

TEST(Saturation, RealizedWrenchConsistency) {
  const Mat4 G = allocation_matrix(kTrue);
  for (int i = 0; i < 1000; ++i) {
    const ControlCommand c = allocate_and_saturate(uniform(-0.2, 0.8), random_vec3(5e-3), kTrue);
    Vec4 w;
    w << c.f, c.tau;
    ASSERT_LT((G * c.u - w).norm(), 1e-12);
    for (int k = 0; k < 4; ++k) {
      ASSERT_GE(c.u[k], kTrue.f_min);
      ASSERT_LE(c.u[k], kTrue.f_max);
    }
  }
}

TEST(Saturation, UnsaturatedCommandIsReproduced) {
  const Vec3 tau{1e-4, -2e-4, 5e-6};
  const ControlCommand c = allocate_and_saturate(0.3, tau, kTrue);
  EXPECT_FALSE(c.any_saturated());
  EXPECT_NEAR(c.f, 0.3, 1e-15);
  EXPECT_LT((c.tau - tau).norm(), 1e-15);
}

TEST(Disturbances, TableSignals) {
  Disturbances d = eval_disturbances(0.0, true);
  EXPECT_LT((d.linear - Vec3::Constant(2.0)).norm(), 1e-15);
  EXPECT_LT(d.angular.norm(), 1e-15);
  d = eval_disturbances(0.5, true);
  EXPECT_LT(d.linear.norm(), 1e-15);
  EXPECT_LT((d.angular - Vec3::Ones()).norm(), 1e-15);
  for (double t : {0.0, 0.5, 3.7}) {
    d = eval_disturbances(t, false);
    EXPECT_EQ(d.linear, Vec3::Zero());
    EXPECT_EQ(d.angular, Vec3::Zero());
  }
  d = eval_disturbances(0.0, true, Vec3(0, 0, 1));
  EXPECT_EQ(d.linear.x(), 0.0);
  EXPECT_EQ(d.linear.y(), 0.0);
  EXPECT_NEAR(d.linear.z(), 2.0, 1e-15);
}

TEST(RotorSpeeds, InverseOfThrustMap) {
  const Vec4 u{0.01, 0.05, 0.1, 0.15};
  const Vec4 w = rotor_speeds(u, kTrue);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(kTrue.thrust_coeff * w[i] * w[i], u[i], 1e-15);
}

}  // namespace
}  // namespace quadsmc

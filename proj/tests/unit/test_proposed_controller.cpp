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

#include "quadsmc/errors.hpp"
#include "quadsmc/proposed_controller.hpp"
#include "quadsmc/reference.hpp"
#include "test_support.hpp"

namespace quadsmc {
namespace {

using testing::axis_angle;
using testing::random_unit_quat;
using testing::random_vec3;
using testing::uniform;

const VehicleParams kBelieved = VehicleParams::believed_vehicle();
const ProposedGains kGains{};

ReferenceSample hover_ref(const Vec3& p = Vec3(0, 0, 2)) { return setpoint_reference(p, Vec3::UnitX()); }

VehicleState at(const Vec3& p, const Quat& q = Quat::identity()) {
  VehicleState s;
  s.position = p;
  s.attitude = q;
  return s;
}

TEST(PositionSmc, HoverThrust) {
  const PositionSmcResult r = position_smc(at({0, 0, 2}), hover_ref(), kBelieved, kGains.position);
  EXPECT_LT((r.chain.kappa - Vec3(0, 0, 0.0216 * 9.81)).norm(), 1e-15);
  EXPECT_NEAR(r.thrust, 0.21190, 1e-5);
  EXPECT_NEAR(r.thrust, 0.0216 * 9.81, 1e-15);
  EXPECT_EQ(r.chain.s, Vec3::Zero());
}

TEST(PositionSmc, SaturatedReachingTerm) {
  const PositionSmcResult r = position_smc(at({0, 0, 12}), hover_ref(), kBelieved, kGains.position);
  EXPECT_NEAR(r.thrust, 0.0216 * (9.81 - 8.0), 1e-12);
  EXPECT_NEAR(r.thrust, 0.03910, 1e-5);
}

TEST(PositionSmc, InvertedAttitudeGivesNegativeThrust) {
  const PositionSmcResult r =
      position_smc(at({0, 0, 2}, Quat(0, 1, 0, 0)), hover_ref(), kBelieved, kGains.position);
  EXPECT_NEAR(r.thrust, -0.0216 * 9.81, 1e-15);
}

TEST(PositionSmc, RejectsNonFiniteState) {
  VehicleState s = at({0, 0, 2});
  s.velocity.x() = NAN;
  EXPECT_THROW(position_smc(s, hover_ref(), kBelieved, kGains.position), DomainError);
}

TEST(KappaDerivatives, ZeroErrorsGiveZeroRates) {
  const KappaRates r = kappa_derivatives(Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                                         hover_ref(), 0.0216, kGains.position);
  EXPECT_EQ(r.kappa_dot, Vec3::Zero());
  EXPECT_EQ(r.kappa_ddot, Vec3::Zero());
}

TEST(KappaDerivatives, ReachingTermAtZeroSurface) {
  const Vec3 r{0.3, -0.2, 0.5};
  PositionSmcGains no_reach = kGains.position;
  no_reach.k = Vec3::Zero();
  const KappaRates with = kappa_derivatives(Vec3::Zero(), Vec3::Zero(), r, Vec3::Zero(),
                                            hover_ref(), 0.0216, kGains.position);
  const KappaRates without = kappa_derivatives(Vec3::Zero(), Vec3::Zero(), r, Vec3::Zero(),
                                               hover_ref(), 0.0216, no_reach);
  EXPECT_EQ(with.s_dot, r);
  EXPECT_LT((with.kappa_dot - without.kappa_dot + 0.0216 * kGains.position.k.cwiseProduct(r)).norm(),
            1e-15);
}

// Smooth synthetic flight ξ(t) against the calibrated lemniscate.
struct Synthetic {
  LemniscateCal cal = calibrate_lemniscate();

  VehicleState state(double t) const {
    VehicleState s;
    s.position = {std::sin(1.3 * t), 0.5 * std::cos(0.7 * t), 2.0 + 0.2 * std::sin(2.0 * t)};
    s.velocity = {1.3 * std::cos(1.3 * t), -0.35 * std::sin(0.7 * t), 0.4 * std::cos(2.0 * t)};
    return s;
  }
  Vec3 accel(double t) const {
    return {-1.69 * std::sin(1.3 * t), -0.245 * std::cos(0.7 * t), -0.8 * std::sin(2.0 * t)};
  }
  Vec3 jerk(double t) const {
    return {-2.197 * std::cos(1.3 * t), 0.1715 * std::sin(0.7 * t), -1.6 * std::cos(2.0 * t)};
  }
  ReferenceSample ref(double t) const { return lemniscate_reference(t, cal); }

  KappaChain chain(double t) const {
    const VehicleState s = state(t);
    const ReferenceSample r = ref(t);
    KappaChain c = position_smc(s, r, kBelieved, kGains.position).chain;
    const KappaRates k = kappa_derivatives(c.s, s.velocity - r.velocity, accel(t) - r.acceleration,
                                           jerk(t) - r.jerk, r, kBelieved.mass, kGains.position);
    c.kappa_dot = k.kappa_dot;
    c.kappa_ddot = k.kappa_ddot;
    c.s_dot = k.s_dot;
    c.s_ddot = k.s_ddot;
    return c;
  }
};

TEST(KappaDerivatives, MatchFiniteDifferencesAlongTrajectory) {
  const Synthetic syn;
  const double h = 1e-4;
  double err1 = 0, norm1 = 0, err2 = 0, norm2 = 0;
  for (int i = 0; i < 400; ++i) {
    const double t = 0.05 * i + 0.01;
    const KappaChain m = syn.chain(t - h), c = syn.chain(t), p = syn.chain(t + h);
    const Vec3 fd1 = (p.kappa - m.kappa) / (2 * h);
    const Vec3 fd2 = (p.kappa_dot - m.kappa_dot) / (2 * h);
    err1 += (fd1 - c.kappa_dot).squaredNorm();
    norm1 += c.kappa_dot.squaredNorm();
    err2 += (fd2 - c.kappa_ddot).squaredNorm();
    norm2 += c.kappa_ddot.squaredNorm();
    ASSERT_LT((fd1 - c.kappa_dot).norm(), 1e-6 * std::max(1.0, c.kappa_dot.norm()));
  }
  EXPECT_LT(std::sqrt(err1 / norm1), 1e-6);
  EXPECT_LT(std::sqrt(err2 / norm2), 1e-6);
}

TEST(KappaDerivatives, AlternateSecondDerivativeFailsTheOracle) {
  // Using s_ddot in the tanh term is not the derivative of
  // kappa_dot; confirm the oracle can tell them apart.
  const Synthetic syn;
  const double h = 1e-4;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = 0.05 * i + 0.01;
    const KappaChain m = syn.chain(t - h), c = syn.chain(t), p = syn.chain(t + h);
    const Vec3 fd2 = (p.kappa_dot - m.kappa_dot) / (2 * h);
    const Vec3 sech2 = c.s.array().cosh().inverse().square();
    const Vec3 th = c.s.array().tanh();
    const Vec3 alternate = c.kappa_ddot +
                         2.0 * kBelieved.mass *
                             kGains.position.k.cwiseProduct(sech2).cwiseProduct(th).cwiseProduct(
                                 c.s_ddot - c.s_dot.cwiseProduct(c.s_dot));
    worst = std::max(worst, (alternate - fd2).norm() / std::max(1e-9, fd2.norm()));
  }
  EXPECT_GT(worst, 1e-2);
}

TEST(AttitudeReference, LevelHover) {
  KappaChain c;
  c.kappa = {0, 0, 0.2};
  const AttitudeReferenceResult r = attitude_reference(c, hover_ref(), std::nullopt);
  EXPECT_FALSE(r.flagged());
  EXPECT_LT((r.ref.R_d - Mat3::Identity()).norm(), 1e-15);
  EXPECT_LT(testing::cover_distance(r.ref.q_d, Quat::identity()), 1e-15);
  EXPECT_EQ(r.ref.omega_d, Vec3::Zero());
  EXPECT_EQ(r.ref.alpha_d, Vec3::Zero());
}

TEST(AttitudeReference, DegenerateHeading) {
  KappaChain c;
  c.kappa = {0.2, 0, 0};
  const AttitudeReferenceResult r = attitude_reference(c, hover_ref(), std::nullopt);
  EXPECT_TRUE(r.heading_degenerate);
  EXPECT_TRUE(r.flagged());
  EXPECT_LT((r.ref.R_d.transpose() * r.ref.R_d - Mat3::Identity()).norm(), 1e-9);
  EXPECT_TRUE(r.ref.omega_d.allFinite());
}

TEST(AttitudeReference, DegenerateKappaHoldsPrevious) {
  KappaChain good;
  good.kappa = {0.01, 0.02, 0.2};
  const AttitudeReference prev = attitude_reference(good, hover_ref(), std::nullopt).ref;
  KappaChain tiny;
  tiny.kappa = {0, 0, 5e-5};
  const AttitudeReferenceResult r = attitude_reference(tiny, hover_ref(), prev);
  EXPECT_TRUE(r.kappa_degenerate);
  EXPECT_LT(testing::cover_distance(r.ref.q_d, prev.q_d), 1e-15);
}

TEST(AttitudeReference, OrthonormalAndContinuous) {
  const Synthetic syn;
  std::optional<AttitudeReference> prev;
  for (int i = 0; i < 2000; ++i) {
    const double t = 0.01 * i;
    const AttitudeReferenceResult r = attitude_reference(syn.chain(t), syn.ref(t), prev);
    ASSERT_FALSE(r.flagged());
    ASSERT_LT((r.ref.R_d.transpose() * r.ref.R_d - Mat3::Identity()).norm(), 1e-9);
    ASSERT_NEAR(r.ref.R_d.determinant(), 1.0, 1e-9);
    ASSERT_NEAR(r.ref.q_d.norm(), 1.0, 1e-12);
    if (prev) ASSERT_GT(dot(r.ref.q_d, prev->q_d), 0.0);
    prev = r.ref;
  }
}

TEST(AttitudeReference, RatesMatchFiniteDifferences) {
  const Synthetic syn;
  const double h = 1e-5;
  double ew = 0, nw = 0, ea = 0, na = 0;
  for (int i = 0; i < 400; ++i) {
    const double t = 0.05 * i + 0.01;
    const AttitudeReference c = attitude_reference(syn.chain(t), syn.ref(t), std::nullopt).ref;
    const AttitudeReference m = attitude_reference(syn.chain(t - h), syn.ref(t - h), c).ref;
    const AttitudeReference p = attitude_reference(syn.chain(t + h), syn.ref(t + h), c).ref;
    const Quat qdot = (1.0 / (2 * h)) * (p.q_d - m.q_d);
    const Vec3 w_fd = 2.0 * quat_mul(quat_conj(c.q_d), qdot).v;
    const Vec3 a_fd = (p.omega_d - m.omega_d) / (2 * h);
    ew += (w_fd - c.omega_d).squaredNorm();
    nw += c.omega_d.squaredNorm();
    ea += (a_fd - c.alpha_d).squaredNorm();
    na += c.alpha_d.squaredNorm();
  }
  EXPECT_LT(std::sqrt(ew / nw), 1e-6);
  EXPECT_LT(std::sqrt(ea / na), 1e-5);
}

TEST(AttitudeSmc, Equilibrium) {
  const AttitudeSmcResult r =
      attitude_smc(at({0, 0, 2}), AttitudeReference{}, kBelieved, kGains.attitude);
  EXPECT_EQ(r.torque, Vec3::Zero());
  EXPECT_EQ(r.s_q, Vec3::Zero());
}

TEST(AttitudeSmc, NegativeCoverGivesNoTorque) {
  AttitudeReference ar;
  ar.q_d = Quat(-1, 0, 0, 0);
  const AttitudeSmcResult r = attitude_smc(at({0, 0, 2}), ar, kBelieved, kGains.attitude);
  EXPECT_EQ(r.q_e.w, -1.0);
  EXPECT_LT(r.torque.norm(), 1e-18);
}

TEST(AttitudeSmc, PureYawError) {
  const Quat q = axis_angle(Vec3::UnitZ(), 0.2);
  const AttitudeSmcResult r = attitude_smc(at({0, 0, 2}, q), AttitudeReference{}, kBelieved, kGains.attitude);
  const double expected = -0.02 * std::tanh(20.0 * std::sin(0.1));
  EXPECT_NEAR(r.torque.x(), 0.0, 1e-18);
  EXPECT_NEAR(r.torque.y(), 0.0, 1e-18);
  EXPECT_NEAR(r.torque.z(), expected, 1e-15);
  EXPECT_NEAR(r.torque.z(), -0.01928, 1e-5);
}

TEST(AttitudeSmc, CoverInvariance) {
  for (int i = 0; i < 1000; ++i) {
    VehicleState s = at(random_vec3(), random_unit_quat());
    s.angular_velocity = random_vec3(3.0);
    AttitudeReference ar;
    ar.q_d = random_unit_quat();
    ar.omega_d = random_vec3(2.0);
    ar.alpha_d = random_vec3(5.0);
    const Vec3 tau = attitude_smc(s, ar, kBelieved, kGains.attitude).torque;

    VehicleState s_neg = s;
    s_neg.attitude = -s.attitude;
    AttitudeReference ar_neg = ar;
    ar_neg.q_d = -ar.q_d;
    ASSERT_LT((attitude_smc(s_neg, ar_neg, kBelieved, kGains.attitude).torque - tau).norm(), 1e-12);
    // Flipping only one cover flips q_e; sgn+ compensates.
    ASSERT_LT((attitude_smc(s_neg, ar, kBelieved, kGains.attitude).torque - tau).norm(), 1e-12);
    ASSERT_LT((attitude_smc(s, ar_neg, kBelieved, kGains.attitude).torque - tau).norm(), 1e-12);
  }
}

TEST(AttitudeSmc, JumpAcrossHalfTurnIsBounded) {
  // Crossing q_we = 0 flips sgn+; the torque jump stays within what the
  // saturated tanh and the kinematic term allow.
  const Vec3 lambda_j = kGains.attitude.lambda.cwiseProduct(kBelieved.inertia);
  for (int i = 0; i < 200; ++i) {
    const Vec3 axis = random_vec3().normalized();
    VehicleState s = at(Vec3::Zero());
    s.angular_velocity = random_vec3(3.0);
    const double delta = 1e-9;
    s.attitude = axis_angle(axis, std::numbers::pi - delta);
    const AttitudeSmcResult a = attitude_smc(s, AttitudeReference{}, kBelieved, kGains.attitude);
    s.attitude = axis_angle(axis, std::numbers::pi + delta);
    const AttitudeSmcResult b = attitude_smc(s, AttitudeReference{}, kBelieved, kGains.attitude);
    ASSERT_GT(a.q_e.w, 0.0);
    ASSERT_LT(b.q_e.w, 0.0);
    const double bound = 2.0 * kGains.attitude.k.norm() +
                         lambda_j.maxCoeff() * s.angular_velocity.norm() + 1e-6;
    ASSERT_LE((a.torque - b.torque).norm(), bound);
  }
}

TEST(AttitudeSmc, ShortestPathTorqueDirection) {
  // Just past a half turn the torque pushes the short way round.
  for (double deg : {170.0, 179.0, 181.0, 190.0}) {
    const Quat q = axis_angle(Vec3::UnitZ(), deg * std::numbers::pi / 180.0);
    const Vec3 tau = attitude_smc(at({0, 0, 2}, q), AttitudeReference{}, kBelieved, kGains.attitude).torque;
    if (deg < 180.0) {
      EXPECT_LT(tau.z(), 0.0) << deg;
    } else {
      EXPECT_GT(tau.z(), 0.0) << deg;
    }
  }
}

TEST(Lyapunov, Examples) {
  EXPECT_EQ(lyapunov_value(Vec3::Zero(), Vec3::Zero(), kBelieved), 0.0);
  EXPECT_DOUBLE_EQ(lyapunov_value(Vec3(1, 0, 0), Vec3::Zero(), kBelieved), 0.5);
  const Vec3 s_xi{0.3, -0.1, 0.2};
  const Vec3 s_q{5e-4, -4e-4, 3e-4};
  const double v = lyapunov_value(s_xi, s_q, kBelieved);
  EXPECT_NEAR(v, 0.5 * s_xi.squaredNorm(), 1e-9 * 0.5 * s_xi.squaredNorm());
  for (int i = 0; i < 1000; ++i) {
    ASSERT_GE(lyapunov_value(random_vec3(5.0), random_vec3(50.0), kBelieved), 0.0);
  }
}

TEST(ProposedController, HoverHoldWithPerfectModel) {
  const VehicleParams truth = VehicleParams::true_vehicle();
  ProposedController c(truth, kGains, 1e-3);
  for (int k = 0; k < 5; ++k) {
    const ControlRequest r = c.step(at({0, 0, 2}), hover_ref());
    EXPECT_NEAR(r.thrust, truth.mass * truth.gravity, 1e-15);
    EXPECT_LT(r.torque.norm(), 1e-18);
    EXPECT_EQ(r.diag.lyapunov, 0.0);
    c.notify_applied(allocate_and_saturate(r.thrust, r.torque, truth));
  }
}

TEST(ProposedController, FlipFirstStepIsFinite) {
  const ScenarioConfig sc = scenario_by_id("flip");
  ProposedController c(kBelieved, kGains, 1e-3);
  const ControlRequest r = c.step(sc.initial, flip_reference(0.0));
  EXPECT_TRUE(std::isfinite(r.thrust));
  EXPECT_TRUE(r.torque.allFinite());
  EXPECT_TRUE(r.diag.s_q.allFinite());
  EXPECT_TRUE(std::isfinite(r.diag.lyapunov));
  EXPECT_FALSE(r.diag.controller_failed);
}

TEST(ProposedController, DeterministicFromIdenticalMemory) {
  const ScenarioConfig sc = scenario_by_id("lemniscate");
  const LemniscateCal cal = calibrate_lemniscate();
  ProposedController a(kBelieved, kGains, 1e-3);
  a.step(sc.initial, lemniscate_reference(0.0, cal));
  std::unique_ptr<Controller> b = a.clone();
  VehicleState s = sc.initial;
  s.position.x() += 0.01;
  const ControlRequest ra = a.step(s, lemniscate_reference(0.001, cal));
  const ControlRequest rb = b->step(s, lemniscate_reference(0.001, cal));
  EXPECT_EQ(ra.thrust, rb.thrust);
  EXPECT_EQ(ra.torque, rb.torque);
  EXPECT_EQ(ra.diag.q_d.coeffs(), rb.diag.q_d.coeffs());
}

TEST(Gains, Validation) {
  PositionSmcGains p;
  p.lambda.x() = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  AttitudeSmcGains a;
  a.k.z() = -1.0;
  EXPECT_THROW(a.validate(), ConfigError);
  EXPECT_THROW(ProposedController(kBelieved, kGains, 0.0), ConfigError);
}

}  // namespace
}  // namespace quadsmc

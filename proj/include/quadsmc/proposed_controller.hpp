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
 * @file proposed_controller.hpp
 * @brief Cascaded quaternion sliding mode flight controller.
 *
 * Outer loop: a position sliding mode controller produces the thrust
 * command and the force vector kappa. Middle: the desired rotation is built
 * from kappa and the reference heading without Euler angles, and its body
 * rate and acceleration follow from the analytic derivatives of kappa.
 * Inner loop: a quaternion sliding mode attitude controller whose surface
 * is scaled by sgn+(q_w) of the attitude error, so q and -q give the same
 * torque and the vehicle always rotates along the shorter arc.
 */

#pragma once

#include <optional>

#include "quadsmc/controller.hpp"

namespace quadsmc {

struct PositionSmcGains {
  Vec3 lambda{2.0, 4.0, 8.0};  ///< surface slope [1/s]
  Vec3 k{4.0, 2.0, 8.0};       ///< reaching gain, diagonal [m/s^2]

  void validate() const;
};

struct AttitudeSmcGains {
  Vec3 lambda{20.0, 20.0, 20.0};  ///< [1/s]
  Vec3 k{0.02, 0.02, 0.02};       ///< diagonal [N m]

  void validate() const;
};

struct ProposedGains {
  PositionSmcGains position;
  AttitudeSmcGains attitude;
};

/// Force vector kappa, its derivatives and the position sliding surface with
/// its derivatives.
struct KappaChain {
  Vec3 kappa{Vec3::Zero()};
  Vec3 kappa_dot{Vec3::Zero()};
  Vec3 kappa_ddot{Vec3::Zero()};
  Vec3 s{Vec3::Zero()};
  Vec3 s_dot{Vec3::Zero()};
  Vec3 s_ddot{Vec3::Zero()};
};

struct AttitudeReference {
  Quat q_d{};
  Vec3 omega_d{Vec3::Zero()};
  Vec3 alpha_d{Vec3::Zero()};
  Mat3 R_d{Mat3::Identity()};
};

inline constexpr double kKappaMin = 1e-4;  ///< [N]
inline constexpr double kNuMin = 1e-6;

struct PositionSmcResult {
  double thrust{0.0};
  KappaChain chain;  ///< kappa and s only; rates come from kappa_derivatives
};

/// s = v_e + lambda o xi_e,
/// kappa = m (a_d - lambda o v_e + g e3 - K tanh(s)),
/// f = kappa . b3 with b3 the body z axis in the inertial frame.
/// Throws DomainError on a non-finite state.
PositionSmcResult position_smc(const VehicleState& state, const ReferenceSample& ref,
                               const VehicleParams& believed, const PositionSmcGains& gains);

struct KappaRates {
  Vec3 kappa_dot;
  Vec3 kappa_ddot;
  Vec3 s_dot;
  Vec3 s_ddot;
};

/// Exact first and second time derivatives of kappa given the acceleration
/// and jerk tracking errors:
///   kappa_dot  = m (j_d - lambda o a_e - K sech^2(s) o s_dot)
///   kappa_ddot = m (snap_d - lambda o j_e
///                   - K [sech^2(s) o s_ddot - 2 sech^2(s) o tanh(s) o s_dot o s_dot])
/// with s_dot = a_e + lambda o v_e and s_ddot = j_e + lambda o a_e.
///
/// Note the s_dot o s_dot factor in the tanh term; using s_ddot there is not
/// the derivative of kappa_dot.
KappaRates kappa_derivatives(const Vec3& s, const Vec3& v_e, const Vec3& a_e, const Vec3& j_e,
                             const ReferenceSample& ref, double mass,
                             const PositionSmcGains& gains);

/// Acceleration error predicted by the model,
/// a_e = -g e3 + (f / m) b3(q) - a_d.
Vec3 model_acceleration_error(const VehicleState& state, const ReferenceSample& ref, double thrust,
                              const VehicleParams& believed);

struct AttitudeReferenceResult {
  AttitudeReference ref;
  bool kappa_degenerate{false};    ///< ‖kappa‖ < kKappaMin, previous reference held
  bool heading_degenerate{false};  ///< b3d parallel to b1r, previous b2d held

  bool flagged() const { return kappa_degenerate || heading_degenerate; }
};

/// Builds R_d = [b1d, b2d, b3d] from b3d = kappa/‖kappa‖ and
/// b2d = (b3d x b1r)/‖b3d x b1r‖, then omega_d = (R_dᵀ dR_d)^vee and
/// alpha_d = (R_dᵀ ddR_d - hat(omega_d)^2)^vee. q_d is kept on the cover
/// closest to @p prev.
AttitudeReferenceResult attitude_reference(const KappaChain& chain, const ReferenceSample& ref,
                                           const std::optional<AttitudeReference>& prev);

struct AttitudeSmcResult {
  Vec3 torque{Vec3::Zero()};
  Vec3 s_q{Vec3::Zero()};
  Quat q_e{};
  Vec3 omega_e{Vec3::Zero()};
};

/// sgn+(x) = 1 for x >= 0, -1 otherwise.
inline double sgn_plus(double x) { return x >= 0.0 ? 1.0 : -1.0; }

/// q_e = q_d* (x) q, w_e = w - w_d,
/// s_q = w_e + lambda o sgn+(q_we) vec(q_e),
/// tau = J alpha_d + w x J w - J (lambda o sgn+(q_we) d/dt vec(q_e)) - K tanh(s_q),
/// with d/dt vec(q_e) = 0.5 (q_we w_e + vec(q_e) x w_e).
AttitudeSmcResult attitude_smc(const VehicleState& state, const AttitudeReference& ar,
                               const VehicleParams& believed, const AttitudeSmcGains& gains);

/// V = 0.5 s_xiᵀ s_xi + 0.5 s_dᵀ J s_d with s_d = s_q - tanh(s_q).
double lyapunov_value(const Vec3& s_xi, const Vec3& s_q, const VehicleParams& believed);

/// Position loop plus attitude-reference generation with the memory they
/// need. Shared verbatim by the proposed and the quaternion-PD controllers.
class PositionStage {
 public:
  PositionStage(const VehicleParams& believed, const PositionSmcGains& gains, double control_period);

  struct Output {
    double thrust{0.0};
    KappaChain chain;
    Vec3 a_e{Vec3::Zero()};
    Vec3 j_e{Vec3::Zero()};
    AttitudeReference attitude;
    bool degenerate{false};
  };

  Output update(const VehicleState& state, const ReferenceSample& ref);
  void notify_applied(const ControlCommand& cmd) { last_thrust_ = cmd.f; }

 private:
  VehicleParams believed_;
  PositionSmcGains gains_;
  double period_;
  std::optional<double> last_thrust_;
  std::optional<Vec3> last_a_e_;
  std::optional<AttitudeReference> last_reference_;
};

class ProposedController final : public Controller {
 public:
  ProposedController(const VehicleParams& believed, const ProposedGains& gains, double control_period);

  std::string_view id() const override { return "proposed"; }
  ControlRequest step(const VehicleState& state, const ReferenceSample& ref) override;
  void notify_applied(const ControlCommand& cmd) override { stage_.notify_applied(cmd); }
  std::unique_ptr<Controller> clone() const override {
    return std::make_unique<ProposedController>(*this);
  }

 private:
  VehicleParams believed_;
  ProposedGains gains_;
  PositionStage stage_;
};

}  // namespace quadsmc

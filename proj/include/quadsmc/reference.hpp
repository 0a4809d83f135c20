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
 * @file reference.hpp
 * @brief Reference trajectories and scenario descriptions.
 *
 * A reference sample carries the desired position with derivatives up to
 * fourth order and the horizontal reference heading b1r with two
 * derivatives; the attitude-reference chain consumes all of them.
 */

#pragma once

#include <optional>
#include <string>

#include "quadsmc/dynamics.hpp"

namespace quadsmc {

struct ReferenceSample {
  Vec3 position{Vec3::Zero()};
  Vec3 velocity{Vec3::Zero()};
  Vec3 acceleration{Vec3::Zero()};
  Vec3 jerk{Vec3::Zero()};
  Vec3 snap{Vec3::Zero()};
  Vec3 heading{Vec3::UnitX()};        ///< b1r, unit and horizontal
  Vec3 heading_rate{Vec3::Zero()};
  Vec3 heading_accel{Vec3::Zero()};
};

/// Figure-eight x = A sin(w t), y = B sin(2 w t), z = altitude.
struct LemniscateCal {
  double amplitude_x{0.0};  ///< A [m]
  double amplitude_y{0.0};  ///< B [m]
  double frequency{0.0};    ///< w [rad/s]
  double altitude{2.0};     ///< [m]
  double max_speed{0.0};    ///< sampled over one period [m/s]
  double max_accel{0.0};    ///< sampled over one period [m/s^2]

  double period() const;
};

enum class HeadingMode { kVelocityAligned, kFixed };

inline constexpr double kCalibrationSpeedTol = 0.02;
inline constexpr double kCalibrationAccelTol = 0.05;
inline constexpr int kCalibrationSamplesPerPeriod = 20000;

/// Sampled maximum speed and acceleration of the figure-eight over one period.
std::pair<double, double> lemniscate_extrema(double amplitude_x, double amplitude_y,
                                             double frequency);

/// Finds (A, w) for fixed A/B so that the sampled extrema hit the targets.
/// Deterministic: log-spaced grid bracket followed by bisection. Throws
/// ConfigError for non-positive targets or an infeasible family, with the
/// achievable extrema in the message.
LemniscateCal calibrate_lemniscate(double target_vmax = 2.51, double target_amax = 1.7,
                                   double shape_ratio = 2.0, double altitude = 2.0);

/// Constant setpoint used by the flip scenario.
ReferenceSample setpoint_reference(const Vec3& position, const Vec3& heading);
ReferenceSample flip_reference(double t);

/// Closed-form figure-eight sample. With a velocity-aligned heading and a
/// horizontal speed below 1e-6 m/s, @p last_heading is held (e1 if empty).
ReferenceSample lemniscate_reference(double t, const LemniscateCal& cal,
                                     HeadingMode heading = HeadingMode::kVelocityAligned,
                                     const std::optional<Vec3>& last_heading = std::nullopt);

enum class ReferenceKind { kSetpoint, kLemniscate };
enum class FlipVariant { kYawHalfTurn, kInverted };

struct LemniscateTargets {
  double max_speed{2.51};
  double max_accel{1.7};
  double shape_ratio{2.0};
  double altitude{2.0};
};

struct ScenarioConfig {
  std::string id;
  VehicleState initial;
  double duration{10.0};
  ReferenceKind kind{ReferenceKind::kSetpoint};
  Vec3 setpoint{Vec3::Zero()};
  Vec3 setpoint_heading{Vec3::UnitX()};
  LemniscateTargets lemniscate;
  HeadingMode heading{HeadingMode::kVelocityAligned};
  bool disturbance{true};
  bool uncertainty{true};
  Vec3 disturbance_axes{Vec3::Ones()};

  void validate() const;
};

ScenarioConfig flip_scenario(FlipVariant variant = FlipVariant::kYawHalfTurn);
ScenarioConfig lemniscate_scenario();
/// Setpoint hold at @p position starting from rest with attitude @p q.
ScenarioConfig hover_scenario(const Vec3& position, const Quat& q, double duration);

/// "flip", "flip-inverted", "lemniscate"; ConfigError otherwise.
ScenarioConfig scenario_by_id(const std::string& id);

/// Stateful sampler bound to one simulation (holds the calibrated curve and
/// the last valid heading).
class ReferenceTrajectory {
 public:
  explicit ReferenceTrajectory(const ScenarioConfig& sc);

  ReferenceSample sample(double t);
  const std::optional<LemniscateCal>& calibration() const { return cal_; }

 private:
  ReferenceKind kind_;
  ReferenceSample setpoint_;
  HeadingMode heading_;
  std::optional<LemniscateCal> cal_;
  std::optional<Vec3> last_heading_;
};

}  // namespace quadsmc

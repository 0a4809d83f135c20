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

#include "quadsmc/reference.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinHeadingSpeed = 1e-6;
constexpr double kMinFrequency = 1e-3;
constexpr double kMaxFrequency = 1e3;
constexpr int kGridPoints = 61;
constexpr int kBisectionIterations = 200;

double sampled_ratio(double w, double shape_ratio) {
  const auto [v, a] = lemniscate_extrema(1.0, 1.0 / shape_ratio, w);
  return a / v;
}

}  // namespace

double LemniscateCal::period() const { return 2.0 * kPi / frequency; }

std::pair<double, double> lemniscate_extrema(double amplitude_x, double amplitude_y,
                                             double frequency) {
  const double w = frequency;
  double vmax = 0.0, amax = 0.0;
  for (int k = 0; k < kCalibrationSamplesPerPeriod; ++k) {
    const double th = 2.0 * kPi * k / kCalibrationSamplesPerPeriod;
    const double vx = amplitude_x * w * std::cos(th);
    const double vy = 2.0 * amplitude_y * w * std::cos(2.0 * th);
    const double ax = -amplitude_x * w * w * std::sin(th);
    const double ay = -4.0 * amplitude_y * w * w * std::sin(2.0 * th);
    vmax = std::max(vmax, std::hypot(vx, vy));
    amax = std::max(amax, std::hypot(ax, ay));
  }
  return {vmax, amax};
}

LemniscateCal calibrate_lemniscate(double target_vmax, double target_amax, double shape_ratio,
                                   double altitude) {
  if (!(target_vmax > 0.0) || !(target_amax > 0.0) || !std::isfinite(target_vmax) ||
      !std::isfinite(target_amax)) {
    throw ConfigError("calibrate_lemniscate: targets must be positive and finite");
  }
  if (!(shape_ratio > 0.0) || !std::isfinite(shape_ratio)) {
    throw ConfigError("calibrate_lemniscate: shape ratio must be positive");
  }
  const double target_ratio = target_amax / target_vmax;

  // amax / vmax does not depend on the amplitude; bracket it in frequency.
  double lo = 0.0, hi = 0.0;
  double prev_w = kMinFrequency;
  double prev_r = sampled_ratio(prev_w, shape_ratio);
  bool bracketed = prev_r == target_ratio;
  if (bracketed) lo = hi = prev_w;
  for (int i = 1; i < kGridPoints && !bracketed; ++i) {
    const double w = kMinFrequency * std::pow(kMaxFrequency / kMinFrequency,
                                              static_cast<double>(i) / (kGridPoints - 1));
    const double r = sampled_ratio(w, shape_ratio);
    if ((prev_r - target_ratio) * (r - target_ratio) <= 0.0) {
      lo = prev_w;
      hi = w;
      bracketed = true;
    }
    prev_w = w;
    prev_r = r;
  }
  if (!bracketed) {
    const double rmin = sampled_ratio(kMinFrequency, shape_ratio);
    const double rmax = sampled_ratio(kMaxFrequency, shape_ratio);
    std::ostringstream msg;
    msg << "calibrate_lemniscate: amax/vmax = " << target_ratio
        << " 1/s is outside the achievable range [" << rmin << ", " << rmax << "]";
    throw ConfigError(msg.str());
  }
  double r_lo = sampled_ratio(lo, shape_ratio) - target_ratio;
  for (int i = 0; i < kBisectionIterations && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = sampled_ratio(mid, shape_ratio) - target_ratio;
    if (r_lo * r_mid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      r_lo = r_mid;
    }
  }

  LemniscateCal cal;
  cal.frequency = 0.5 * (lo + hi);
  const double unit_vmax = lemniscate_extrema(1.0, 1.0 / shape_ratio, cal.frequency).first;
  cal.amplitude_x = target_vmax / unit_vmax;
  cal.amplitude_y = cal.amplitude_x / shape_ratio;
  cal.altitude = altitude;
  std::tie(cal.max_speed, cal.max_accel) =
      lemniscate_extrema(cal.amplitude_x, cal.amplitude_y, cal.frequency);

  if (std::abs(cal.max_speed / target_vmax - 1.0) > kCalibrationSpeedTol ||
      std::abs(cal.max_accel / target_amax - 1.0) > kCalibrationAccelTol) {
    std::ostringstream msg;
    msg << "calibrate_lemniscate: achievable extrema are vmax = " << cal.max_speed
        << " m/s, amax = " << cal.max_accel << " m/s^2";
    throw ConfigError(msg.str());
  }
  return cal;
}

ReferenceSample setpoint_reference(const Vec3& position, const Vec3& heading) {
  ReferenceSample r;
  r.position = position;
  r.heading = heading;
  return r;
}

ReferenceSample flip_reference(double /*t*/) {
  return setpoint_reference(Vec3(1.0, 2.0, 3.0), Vec3::UnitX());
}

ReferenceSample lemniscate_reference(double t, const LemniscateCal& cal, HeadingMode heading,
                                     const std::optional<Vec3>& last_heading) {
  const double A = cal.amplitude_x, B = cal.amplitude_y, w = cal.frequency;
  const double s1 = std::sin(w * t), c1 = std::cos(w * t);
  const double s2 = std::sin(2.0 * w * t), c2 = std::cos(2.0 * w * t);
  const double w2 = w * w, w3 = w2 * w, w4 = w3 * w;

  ReferenceSample r;
  r.position = {A * s1, B * s2, cal.altitude};
  r.velocity = {A * w * c1, 2.0 * B * w * c2, 0.0};
  r.acceleration = {-A * w2 * s1, -4.0 * B * w2 * s2, 0.0};
  r.jerk = {-A * w3 * c1, -8.0 * B * w3 * c2, 0.0};
  r.snap = {A * w4 * s1, 16.0 * B * w4 * s2, 0.0};

  if (heading == HeadingMode::kFixed) return r;  // e1, zero derivatives

  const Vec3 u(r.velocity.x(), r.velocity.y(), 0.0);
  if (u.norm() < kMinHeadingSpeed) {
    r.heading = last_heading.value_or(Vec3::UnitX());
    return r;
  }
  const Vec3 u_dot(r.acceleration.x(), r.acceleration.y(), 0.0);
  const Vec3 u_ddot(r.jerk.x(), r.jerk.y(), 0.0);
  const UnitVectorChain b = normalize_with_derivatives(u, u_dot, u_ddot);
  r.heading = b.value;
  r.heading_rate = b.rate;
  r.heading_accel = b.accel;
  return r;
}

void ScenarioConfig::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ConfigError("scenario duration must be positive");
  }
  if (!initial.finite() || !initial.attitude.is_unit(1e-9)) {
    throw ConfigError("scenario initial state must be finite with a unit attitude");
  }
  if (kind == ReferenceKind::kSetpoint &&
      (std::abs(setpoint_heading.norm() - 1.0) > 1e-9 || std::abs(setpoint_heading.z()) > 1e-9)) {
    throw ConfigError("setpoint heading must be a horizontal unit vector");
  }
  if (!disturbance_axes.allFinite()) throw ConfigError("disturbance axes must be finite");
  if (kind == ReferenceKind::kLemniscate) {
    calibrate_lemniscate(lemniscate.max_speed, lemniscate.max_accel, lemniscate.shape_ratio,
                         lemniscate.altitude);
  }
}

ScenarioConfig flip_scenario(FlipVariant variant) {
  ScenarioConfig sc;
  sc.id = variant == FlipVariant::kInverted ? "flip-inverted" : "flip";
  sc.initial.position = {0.0, 0.0, 2.0};
  sc.initial.velocity = {1.0, 1.0, 3.0};
  // [0, 0, 0, 1] is a half turn about b3; the inverted variant is a half
  // turn about b1 (upside down).
  sc.initial.attitude = variant == FlipVariant::kInverted ? Quat(0.0, 1.0, 0.0, 0.0)
                                                          : Quat(0.0, 0.0, 0.0, 1.0);
  sc.duration = 10.0;
  sc.kind = ReferenceKind::kSetpoint;
  const ReferenceSample r = flip_reference(0.0);
  sc.setpoint = r.position;
  sc.setpoint_heading = r.heading;
  sc.heading = HeadingMode::kFixed;
  return sc;
}

ScenarioConfig lemniscate_scenario() {
  ScenarioConfig sc;
  sc.id = "lemniscate";
  sc.initial.position = {0.0, 0.0, 2.0};
  sc.initial.velocity = {1.0, -0.5, 0.5};
  // Given to four digits; the norm is 0.99998, so renormalize.
  sc.initial.attitude = Quat(0.2837, 0.0, 0.0, -0.9589).normalized();
  sc.duration = 20.0;
  sc.kind = ReferenceKind::kLemniscate;
  sc.heading = HeadingMode::kVelocityAligned;
  return sc;
}

ScenarioConfig hover_scenario(const Vec3& position, const Quat& q, double duration) {
  ScenarioConfig sc;
  sc.id = "hover";
  sc.initial.position = position;
  sc.initial.attitude = q;
  sc.duration = duration;
  sc.kind = ReferenceKind::kSetpoint;
  sc.setpoint = position;
  sc.setpoint_heading = Vec3::UnitX();
  sc.heading = HeadingMode::kFixed;
  sc.disturbance = false;
  sc.uncertainty = false;
  return sc;
}

ScenarioConfig scenario_by_id(const std::string& id) {
  if (id == "flip") return flip_scenario(FlipVariant::kYawHalfTurn);
  if (id == "flip-inverted") return flip_scenario(FlipVariant::kInverted);
  if (id == "lemniscate") return lemniscate_scenario();
  throw ConfigError("unknown scenario '" + id + "' (valid: flip, flip-inverted, lemniscate)");
}

ReferenceTrajectory::ReferenceTrajectory(const ScenarioConfig& sc)
    : kind_(sc.kind),
      setpoint_(setpoint_reference(sc.setpoint, sc.setpoint_heading)),
      heading_(sc.heading) {
  if (kind_ == ReferenceKind::kLemniscate) {
    cal_ = calibrate_lemniscate(sc.lemniscate.max_speed, sc.lemniscate.max_accel,
                                sc.lemniscate.shape_ratio, sc.lemniscate.altitude);
  }
}

ReferenceSample ReferenceTrajectory::sample(double t) {
  if (kind_ == ReferenceKind::kSetpoint) return setpoint_;
  ReferenceSample r = lemniscate_reference(t, *cal_, heading_, last_heading_);
  last_heading_ = r.heading;
  return r;
}

}  // namespace quadsmc

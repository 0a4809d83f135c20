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
 * @file controller.hpp
 * @brief Common interface of every flight controller driven by the engine.
 */

#pragma once

#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "quadsmc/dynamics.hpp"
#include "quadsmc/reference.hpp"

namespace quadsmc {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Per-step controller internals. Fields a controller does not define stay
/// NaN (e.g. the attitude sliding surface of the geometric controller).
struct Diagnostics {
  Vec3 s_xi{Vec3::Constant(kNaN)};
  Vec3 s_q{Vec3::Constant(kNaN)};
  double lyapunov{kNaN};
  Quat q_d{};
  Quat q_e{};
  Vec3 omega_d{Vec3::Zero()};
  Vec3 alpha_d{Vec3::Zero()};
  Vec3 omega_e{Vec3::Zero()};
  bool reference_degenerate{false};
  bool controller_failed{false};
};

/// Wrench requested by a controller, before allocation.
struct ControlRequest {
  double thrust{0.0};
  Vec3 torque{Vec3::Zero()};
  Diagnostics diag;
};

class Controller {
 public:
  virtual ~Controller() = default;

  virtual std::string_view id() const = 0;

  /// One control update at the current state. Must be called at a fixed
  /// period (the one given at construction).
  virtual ControlRequest step(const VehicleState& state, const ReferenceSample& ref) = 0;

  /// Wrench actually applied after allocation and saturation.
  virtual void notify_applied(const ControlCommand& /*cmd*/) {}

  virtual std::unique_ptr<Controller> clone() const = 0;
};

/// Controller ids accepted by make_controller and the CLI.
const std::vector<std::string>& controller_ids();

}  // namespace quadsmc

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
 * @file errors.hpp
 * @brief Exception types shared by the simulation core.
 *
 * The C API maps each of these onto a qsmc_status code.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace quadsmc {

/// Root of every error thrown by the core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration, unknown ids, out-of-range parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (non-unit quaternion,
/// non-orthonormal matrix, non-finite state, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Euler-angle kinematics evaluated at or near gimbal lock.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The integrator produced a non-finite derivative.
class IntegratorAbort : public Error {
 public:
  using Error::Error;
};

/// Output files or directories could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace quadsmc

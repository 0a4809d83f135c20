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
 * @file mathcore.hpp
 * @brief Quaternion, rotation-matrix, Euler-angle and so(3) primitives.
 *
 * Conventions used throughout the project:
 *  - Quaternions are scalar-first, q = [w, x, y, z], Hamilton product.
 *  - A vehicle attitude q maps body-frame vectors to the inertial frame via
 *    q (x) [0, v] (x) q*, which equals quat_to_rotmat(q) * v. The columns of
 *    quat_to_rotmat(q) are the body axes b1, b2, b3 expressed in the inertial
 *    frame. Kinematics are q_dot = 0.5 q (x) [0, omega] with omega in body.
 *  - Euler angles follow the yaw-pitch-roll (Z-Y-X) sequence,
 *    R = Rz(psi) Ry(theta) Rx(phi).
 */

#pragma once

#include <Eigen/Dense>
#include <optional>

namespace quadsmc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Scalar-first quaternion. Not necessarily unit; see is_unit().
struct Quat {
  double w{1.0};
  Vec3 v{Vec3::Zero()};

  Quat() = default;
  Quat(double w_, const Vec3& v_) : w(w_), v(v_) {}
  Quat(double w_, double x, double y, double z) : w(w_), v(x, y, z) {}

  static Quat identity() { return {}; }
  static Quat pure(const Vec3& u) { return {0.0, u}; }

  double x() const { return v.x(); }
  double y() const { return v.y(); }
  double z() const { return v.z(); }

  double norm() const { return std::sqrt(w * w + v.squaredNorm()); }
  Quat normalized() const;
  bool is_unit(double tol = 1e-9) const { return std::abs(norm() - 1.0) <= tol; }

  Quat operator-() const { return {-w, -v}; }
  Vec4 coeffs() const { return {w, v.x(), v.y(), v.z()}; }
};

Quat operator*(double s, const Quat& q);
Quat operator+(const Quat& a, const Quat& b);
Quat operator-(const Quat& a, const Quat& b);
double dot(const Quat& a, const Quat& b);

/// Hamilton product a (x) b.
Quat quat_mul(const Quat& a, const Quat& b);
inline Quat operator*(const Quat& a, const Quat& b) { return quat_mul(a, b); }

Quat quat_conj(const Quat& q);

/// q (x) [0, v] (x) q*. Throws DomainError when |‖q‖ - 1| > 1e-6.
Vec3 rotate_body_to_inertial(const Quat& q, const Vec3& v_body);

/// q* (x) [0, v] (x) q. For v = e3 this is
/// (2(qx qz - qw qy), 2(qw qx + qy qz), qw^2 - qx^2 - qy^2 + qz^2).
Vec3 rotate_inertial_to_body(const Quat& q, const Vec3& v_inertial);

/// Third body axis in the inertial frame, closed form of
/// rotate_body_to_inertial(q, e3). No unit check; used on hot paths.
Vec3 body_z_axis(const Quat& q);

/// Body-to-inertial rotation matrix; columns are the body axes.
Mat3 quat_to_rotmat(const Quat& q);

/// Inverse of quat_to_rotmat with Shepperd pivoting.
///
/// Sign policy: when @p prev is given, the sign closest to it is returned
/// (keeps sampled attitude references continuous). Otherwise w >= 0, with a
/// tie broken by making the first nonzero vector component positive.
/// Throws DomainError if ‖RᵀR - I‖ > 1e-6 or det R < 0.
Quat rotmat_to_quat(const Mat3& R, const std::optional<Quat>& prev = std::nullopt);

/// Skew-symmetric matrix with hat(v) * w == v.cross(w).
Mat3 hat(const Vec3& v);

/// Inverse of hat(). The skew part is used if ‖M + Mᵀ‖ < tol; otherwise
/// DomainError.
Vec3 vee(const Mat3& M, double tol = 1e-6);

/// vee() of the skew-symmetric part, no tolerance check.
Vec3 vee_skew(const Mat3& M);

struct EulerAngles {
  double roll{0.0};   ///< phi, (-pi, pi]
  double pitch{0.0};  ///< theta, [-pi/2, pi/2]
  double yaw{0.0};    ///< psi, (-pi, pi]

  Vec3 as_vector() const { return {roll, pitch, yaw}; }
};

inline constexpr double kDefaultEulerEpsilon = 1e-6;
inline constexpr double kGimbalFlagMargin = 1e-3;

/// H(eta) such that eta_dot = H(eta) * omega_body.
/// Throws SingularityError when |pitch| >= pi/2 - eps.
Mat3 euler_rate_matrix(const EulerAngles& eta, double eps = kDefaultEulerEpsilon);

struct EulerConversion {
  EulerAngles angles;
  bool near_gimbal{false};  ///< |pitch| > pi/2 - 1e-3
};

EulerConversion quat_to_euler(const Quat& q);
Quat euler_to_quat(const EulerAngles& eta);

/// Rotation angle of q in [0, pi], 2 acos(|w|) on the normalized quaternion.
double rotation_angle(const Quat& q);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

/// b = u / ‖u‖ together with its first two time derivatives, given u and
/// its derivatives. Caller guarantees ‖u‖ > 0.
struct UnitVectorChain {
  Vec3 value;
  Vec3 rate;
  Vec3 accel;
};
UnitVectorChain normalize_with_derivatives(const Vec3& u, const Vec3& u_dot, const Vec3& u_ddot);

/// Returns true when every coefficient is finite.
bool all_finite(const Quat& q);

}  // namespace quadsmc

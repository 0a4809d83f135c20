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

#include "quadsmc/mathcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

constexpr double kRotateUnitTol = 1e-6;
constexpr double kOrthoTol = 1e-6;

void require_unit(const Quat& q, const char* what) {
  if (!all_finite(q) || std::abs(q.norm() - 1.0) > kRotateUnitTol) {
    throw DomainError(std::string(what) + ": quaternion is not unit (norm = " +
                      std::to_string(q.norm()) + ")");
  }
}

// Canonical sign with no history: w >= 0, tie broken by first nonzero
// vector component positive.
Quat canonical_sign(const Quat& q) {
  if (q.w > 0.0) return q;
  if (q.w < 0.0) return -q;
  for (int i = 0; i < 3; ++i) {
    if (q.v[i] > 0.0) return q;
    if (q.v[i] < 0.0) return -q;
  }
  return q;
}

}  // namespace

Quat Quat::normalized() const {
  const double n = norm();
  return {w / n, v / n};
}

Quat operator*(double s, const Quat& q) { return {s * q.w, s * q.v}; }
Quat operator+(const Quat& a, const Quat& b) { return {a.w + b.w, a.v + b.v}; }
Quat operator-(const Quat& a, const Quat& b) { return {a.w - b.w, a.v - b.v}; }
double dot(const Quat& a, const Quat& b) { return a.w * b.w + a.v.dot(b.v); }

Quat quat_mul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.v.dot(b.v), a.w * b.v + b.w * a.v + a.v.cross(b.v)};
}

Quat quat_conj(const Quat& q) { return {q.w, -q.v}; }

Vec3 rotate_body_to_inertial(const Quat& q, const Vec3& v_body) {
  require_unit(q, "rotate_body_to_inertial");
  return quat_mul(quat_mul(q, Quat::pure(v_body)), quat_conj(q)).v;
}

Vec3 rotate_inertial_to_body(const Quat& q, const Vec3& v_inertial) {
  require_unit(q, "rotate_inertial_to_body");
  return quat_mul(quat_mul(quat_conj(q), Quat::pure(v_inertial)), q).v;
}

Vec3 body_z_axis(const Quat& q) {
  const double w = q.w, x = q.x(), y = q.y(), z = q.z();
  return {2.0 * (x * z + w * y), 2.0 * (y * z - w * x), w * w - x * x - y * y + z * z};
}

Mat3 quat_to_rotmat(const Quat& q) {
  require_unit(q, "quat_to_rotmat");
  const Quat n = q.normalized();
  const double w = n.w, x = n.x(), y = n.y(), z = n.z();
  Mat3 R;
  R << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
      2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
      2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y);
  return R;
}

Quat rotmat_to_quat(const Mat3& R, const std::optional<Quat>& prev) {
  if (!R.allFinite() || (R.transpose() * R - Mat3::Identity()).norm() > kOrthoTol ||
      R.determinant() < 0.0) {
    throw DomainError("rotmat_to_quat: matrix is not a proper rotation");
  }
  const double tr = R.trace();
  Quat q;
  // Shepperd: pivot on the largest of (trace, R00, R11, R22).
  if (tr >= R(0, 0) && tr >= R(1, 1) && tr >= R(2, 2)) {
    const double w = 0.5 * std::sqrt(1.0 + tr);
    const double k = 0.25 / w;
    q = {w, (R(2, 1) - R(1, 2)) * k, (R(0, 2) - R(2, 0)) * k, (R(1, 0) - R(0, 1)) * k};
  } else if (R(0, 0) >= R(1, 1) && R(0, 0) >= R(2, 2)) {
    const double x = 0.5 * std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2));
    const double k = 0.25 / x;
    q = {(R(2, 1) - R(1, 2)) * k, x, (R(0, 1) + R(1, 0)) * k, (R(0, 2) + R(2, 0)) * k};
  } else if (R(1, 1) >= R(2, 2)) {
    const double y = 0.5 * std::sqrt(1.0 - R(0, 0) + R(1, 1) - R(2, 2));
    const double k = 0.25 / y;
    q = {(R(0, 2) - R(2, 0)) * k, (R(0, 1) + R(1, 0)) * k, y, (R(1, 2) + R(2, 1)) * k};
  } else {
    const double z = 0.5 * std::sqrt(1.0 - R(0, 0) - R(1, 1) + R(2, 2));
    const double k = 0.25 / z;
    q = {(R(1, 0) - R(0, 1)) * k, (R(0, 2) + R(2, 0)) * k, (R(1, 2) + R(2, 1)) * k, z};
  }
  q = q.normalized();
  if (prev) return dot(q, *prev) < 0.0 ? -q : q;
  return canonical_sign(q);
}

Mat3 hat(const Vec3& v) {
  Mat3 M;
  M << 0.0, -v.z(), v.y(),
      v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return M;
}

Vec3 vee(const Mat3& M, double tol) {
  if (!M.allFinite() || (M + M.transpose()).norm() >= tol) {
    throw DomainError("vee: matrix is not skew-symmetric");
  }
  return vee_skew(M);
}

Vec3 vee_skew(const Mat3& M) {
  return {0.5 * (M(2, 1) - M(1, 2)), 0.5 * (M(0, 2) - M(2, 0)), 0.5 * (M(1, 0) - M(0, 1))};
}

Mat3 euler_rate_matrix(const EulerAngles& eta, double eps) {
  if (!(std::abs(eta.pitch) < std::numbers::pi / 2.0 - eps)) {
    throw SingularityError("euler_rate_matrix: pitch " + std::to_string(eta.pitch) +
                           " rad is at the Euler singularity");
  }
  const double sp = std::sin(eta.roll), cp = std::cos(eta.roll);
  const double tt = std::tan(eta.pitch), ct = std::cos(eta.pitch);
  Mat3 H;
  H << 1.0, sp * tt, cp * tt,
      0.0, cp, -sp,
      0.0, sp / ct, cp / ct;
  return H;
}

EulerConversion quat_to_euler(const Quat& q) {
  const Quat n = q.normalized();
  const double w = n.w, x = n.x(), y = n.y(), z = n.z();
  const double sin_pitch = std::clamp(2.0 * (w * y - x * z), -1.0, 1.0);
  EulerConversion out;
  out.angles.pitch = std::asin(sin_pitch);
  out.near_gimbal = std::abs(out.angles.pitch) > std::numbers::pi / 2.0 - kGimbalFlagMargin;
  if (std::abs(sin_pitch) >= 1.0 - 1e-15) {
    // Roll and yaw are not separable; put everything into yaw.
    out.angles.roll = 0.0;
    out.angles.yaw = wrap_angle(std::atan2(2.0 * (w * z - x * y), 1.0 - 2.0 * (x * x + z * z)));
    return out;
  }
  out.angles.roll = wrap_angle(std::atan2(2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)));
  out.angles.yaw = wrap_angle(std::atan2(2.0 * (x * y + w * z), 1.0 - 2.0 * (y * y + z * z)));
  return out;
}

Quat euler_to_quat(const EulerAngles& eta) {
  const Quat qz{std::cos(eta.yaw / 2.0), 0.0, 0.0, std::sin(eta.yaw / 2.0)};
  const Quat qy{std::cos(eta.pitch / 2.0), 0.0, std::sin(eta.pitch / 2.0), 0.0};
  const Quat qx{std::cos(eta.roll / 2.0), std::sin(eta.roll / 2.0), 0.0, 0.0};
  return quat_mul(quat_mul(qz, qy), qx);
}

double rotation_angle(const Quat& q) {
  const Quat n = q.normalized();
  return 2.0 * std::acos(std::min(1.0, std::abs(n.w)));
}

double wrap_angle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::remainder(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

UnitVectorChain normalize_with_derivatives(const Vec3& u, const Vec3& u_dot, const Vec3& u_ddot) {
  const double n = u.norm();
  const double n3 = n * n * n;
  const double n5 = n3 * n * n;
  const double ud = u.dot(u_dot);
  UnitVectorChain c;
  c.value = u / n;
  c.rate = u_dot / n - (ud / n3) * u;
  c.accel = u_ddot / n - (2.0 * ud / n3) * u_dot -
            ((u_dot.squaredNorm() + u.dot(u_ddot)) / n3) * u + (3.0 * ud * ud / n5) * u;
  return c;
}

bool all_finite(const Quat& q) { return std::isfinite(q.w) && q.v.allFinite(); }

}  // namespace quadsmc

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

#include "quadsmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadsmc/errors.hpp"

namespace quadsmc {

TrackingError tracking_error(const LogRecord& r) {
  TrackingError e;
  e.q_e = quat_mul(quat_conj(r.diag.q_d.normalized()), r.state.attitude);
  e.omega_e = r.state.angular_velocity - rotate_inertial_to_body(e.q_e, r.diag.omega_d);
  return e;
}

MetricSeries metric_series(const SimLog& log) {
  MetricSeries s;
  const size_t n = log.records.size();
  s.t.reserve(n);
  s.position_error.reserve(n);
  s.attitude_angle.reserve(n);
  s.rate_error.reserve(n);
  s.rotor_sum.reserve(n);
  s.saturated.reserve(n);
  for (const LogRecord& r : log.records) {
    const TrackingError e = tracking_error(r);
    s.t.push_back(r.t);
    s.position_error.push_back(r.state.position - r.ref.position);
    s.attitude_angle.push_back(2.0 * std::acos(std::min(1.0, std::abs(e.q_e.w))));
    s.rate_error.push_back(e.omega_e.norm());
    s.rotor_sum.push_back(r.command.u.sum());
    s.saturated.push_back(r.command.any_saturated());
  }
  s.failed = log.controller_failed;
  return s;
}

std::optional<double> settling_time(const std::vector<double>& t, const std::vector<double>& err,
                                    double threshold, double dwell) {
  const size_t n = t.size();
  if (n == 0 || err.size() != n) return std::nullopt;
  constexpr double kSlack = 1e-9;
  // Backward pass: next_bad is the time of the first sample at or after k
  // that is not below threshold.
  std::optional<double> best;
  double next_bad = std::numeric_limits<double>::infinity();
  for (size_t k = n; k-- > 0;) {
    if (!(err[k] < threshold)) {
      next_bad = t[k];
      continue;
    }
    if (t[k] + dwell <= t.back() + kSlack && next_bad > t[k] + dwell + kSlack) best = t[k];
  }
  return best;
}

RunMetrics compute_metrics(const MetricSeries& s) {
  const size_t n = s.t.size();
  if (n == 0) throw DomainError("compute_metrics: empty log");
  if (s.position_error.size() != n || s.attitude_angle.size() != n || s.rate_error.size() != n ||
      s.rotor_sum.size() != n || s.saturated.size() != n) {
    throw DomainError("compute_metrics: series length mismatch");
  }
  RunMetrics m;
  double sse_pos = 0.0;
  double sse_att = 0.0;
  size_t sat = 0;
  std::vector<double> pos_norm(n);
  for (size_t k = 0; k < n; ++k) {
    pos_norm[k] = s.position_error[k].norm();
    sse_pos += s.position_error[k].squaredNorm();
    sse_att += s.attitude_angle[k] * s.attitude_angle[k];
    if (s.saturated[k]) ++sat;
    m.peak_position_error = std::max(m.peak_position_error, pos_norm[k]);
    m.peak_rate_error = std::max(m.peak_rate_error, s.rate_error[k]);
    if (k + 1 < n) m.control_effort += s.rotor_sum[k] * (s.t[k + 1] - s.t[k]);
  }
  m.rmse_position = std::sqrt(sse_pos / static_cast<double>(n));
  m.rmse_attitude = std::sqrt(sse_att / static_cast<double>(n));
  m.saturation_fraction = static_cast<double>(sat) / static_cast<double>(n);
  m.settling_time = settling_time(s.t, pos_norm);
  m.failed = s.failed;
  return m;
}

RunMetrics compute_metrics(const SimLog& log) { return compute_metrics(metric_series(log)); }

namespace {

double metric_value(const RunMetrics& m, const std::string& name) {
  if (name == "rmse_position") return m.rmse_position;
  if (name == "rmse_attitude") return m.rmse_attitude;
  if (name == "control_effort") return m.control_effort;
  if (name == "saturation_fraction") return m.saturation_fraction;
  return m.settling_time.value_or(std::numeric_limits<double>::infinity());
}

}  // namespace

ComparisonReport make_report(const std::string& scenario, std::vector<ComparisonEntry> runs) {
  ComparisonReport report;
  report.scenario = scenario;
  report.runs = std::move(runs);
  static const char* kMetrics[] = {"rmse_position", "rmse_attitude", "control_effort",
                                   "saturation_fraction", "settling_time"};
  for (const char* metric : kMetrics) {
    for (size_t i = 0; i < report.runs.size(); ++i) {
      for (size_t j = i + 1; j < report.runs.size(); ++j) {
        PairwiseOrdering o;
        o.metric = metric;
        o.lhs = report.runs[i].controller;
        o.rhs = report.runs[j].controller;
        o.lhs_value = metric_value(report.runs[i].metrics, metric);
        o.rhs_value = metric_value(report.runs[j].metrics, metric);
        o.order = (o.lhs_value < o.rhs_value) ? -1 : (o.lhs_value > o.rhs_value ? 1 : 0);
        report.orderings.push_back(o);
      }
    }
  }
  return report;
}

}  // namespace quadsmc

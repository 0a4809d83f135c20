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
 * @file metrics.hpp
 * @brief Run metrics and four-controller comparison reports.
 *
 * Every metric is a function of per-record error series that are also
 * written to the CSV outputs, so metrics.json can be recomputed from the
 * CSVs alone.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadsmc/engine.hpp"

namespace quadsmc {

inline constexpr double kSettlingThreshold = 0.05;  ///< [m]
inline constexpr double kSettlingDwell = 1.0;       ///< [s]

/// Attitude and rate tracking errors of one record relative to the desired
/// attitude held by the controller: q_e = q_d* ⊗ q, ω_e = ω − R(q_e)ᵀ ω_d.
struct TrackingError {
  Quat q_e;
  Vec3 omega_e{Vec3::Zero()};
};

TrackingError tracking_error(const LogRecord& r);

/// Per-record series the metrics are computed from.
struct MetricSeries {
  std::vector<double> t;
  std::vector<Vec3> position_error;  ///< ξ − ξ_d
  std::vector<double> attitude_angle;
  std::vector<double> rate_error;    ///< ‖ω_e‖
  std::vector<double> rotor_sum;     ///< Σ u_i
  std::vector<bool> saturated;
  bool failed{false};
};

MetricSeries metric_series(const SimLog& log);

struct RunMetrics {
  double rmse_position{0.0};
  double rmse_attitude{0.0};
  std::optional<double> settling_time;
  double control_effort{0.0};
  double saturation_fraction{0.0};
  bool failed{false};
  double peak_position_error{0.0};
  double peak_rate_error{0.0};
};

/// Throws DomainError on an empty or inconsistent series.
RunMetrics compute_metrics(const MetricSeries& s);
RunMetrics compute_metrics(const SimLog& log);

/// First time at which ‖ξ_e‖ < threshold and stays below for the dwell
/// window, which must fit inside the run.
std::optional<double> settling_time(const std::vector<double>& t, const std::vector<double>& err,
                                    double threshold = kSettlingThreshold,
                                    double dwell = kSettlingDwell);

/// a vs b on one metric; every metric is "lower is better".
struct PairwiseOrdering {
  std::string metric;
  std::string lhs;
  std::string rhs;
  double lhs_value{0.0};
  double rhs_value{0.0};
  int order{0};  ///< -1: lhs lower, 0: equal, 1: lhs higher
};

struct ComparisonEntry {
  std::string controller;
  RunMetrics metrics;
  bool aborted{false};
};

struct ComparisonReport {
  std::string scenario;
  std::vector<ComparisonEntry> runs;
  std::vector<PairwiseOrdering> orderings;
};

/// Builds the pairwise orderings for rmse_position, rmse_attitude,
/// control_effort, saturation_fraction and settling_time (absent ranks last).
ComparisonReport make_report(const std::string& scenario, std::vector<ComparisonEntry> runs);

}  // namespace quadsmc

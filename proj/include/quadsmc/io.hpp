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
 * @file io.hpp
 * @brief CSV and JSON artifacts of a run.
 *
 * states.csv   t,x,y,z,vx,vy,vz,qw,qx,qy,qz,wx,wy,wz,ref_x,ref_y,ref_z
 * controls.csv t,u1..u4,f_cmd,tau_x..z,sat1..sat4,s_xi_x..z,s_q_x..z,V
 * attitude.csv t,qe_w,qe_x,qe_y,qe_z,we_x,we_y,we_z
 *
 * One row per log record; floats use 17 significant digits, undefined
 * diagnostics are written as "nan".
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "quadsmc/metrics.hpp"

namespace quadsmc {

void write_states_csv(std::ostream& out, const SimLog& log);
void write_controls_csv(std::ostream& out, const SimLog& log);
void write_attitude_csv(std::ostream& out, const SimLog& log);

nlohmann::json metrics_to_json(const RunMetrics& m);
/// Metrics plus run identification (scenario, controller, aborted, ...).
nlohmann::json run_summary_json(const SimLog& log, const RunMetrics& m);
nlohmann::json report_to_json(const ComparisonReport& r);

/// Creates @p dir and writes states.csv, controls.csv, attitude.csv and
/// metrics.json. Throws IoError on failure.
void write_run_outputs(const std::filesystem::path& dir, const SimLog& log, const RunMetrics& m);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace quadsmc

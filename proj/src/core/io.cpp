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

#include "quadsmc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

// Locale-independent, round-trippable formatting.
class Row {
 public:
  explicit Row(std::ostream& out) : out_(out) {}
  ~Row() { out_ << '\n'; }

  Row& num(double v) {
    sep();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ << buf;
    return *this;
  }
  Row& vec(const Vec3& v) { return num(v.x()).num(v.y()).num(v.z()); }
  Row& flag(bool b) {
    sep();
    out_ << (b ? '1' : '0');
    return *this;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ostream& out_;
  bool first_{true};
};

std::ofstream open_file(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& p) {
  out.flush();
  if (!out) throw IoError("write to '" + p.string() + "' failed");
}

}  // namespace

void write_states_csv(std::ostream& out, const SimLog& log) {
  out << "t,x,y,z,vx,vy,vz,qw,qx,qy,qz,wx,wy,wz,ref_x,ref_y,ref_z\n";
  for (const LogRecord& r : log.records) {
    const VehicleState& s = r.state;
    Row(out).num(r.t).vec(s.position).vec(s.velocity).num(s.attitude.w).vec(s.attitude.v)
        .vec(s.angular_velocity).vec(r.ref.position);
  }
}

void write_controls_csv(std::ostream& out, const SimLog& log) {
  out << "t,u1,u2,u3,u4,f_cmd,tau_x,tau_y,tau_z,sat1,sat2,sat3,sat4,"
         "s_xi_x,s_xi_y,s_xi_z,s_q_x,s_q_y,s_q_z,V\n";
  for (const LogRecord& r : log.records) {
    const ControlCommand& c = r.command;
    Row row(out);
    row.num(r.t);
    for (int i = 0; i < 4; ++i) row.num(c.u[i]);
    row.num(c.f_cmd).vec(c.tau_cmd);
    for (bool s : c.saturated) row.flag(s);
    row.vec(r.diag.s_xi).vec(r.diag.s_q).num(r.diag.lyapunov);
  }
}

void write_attitude_csv(std::ostream& out, const SimLog& log) {
  out << "t,qe_w,qe_x,qe_y,qe_z,we_x,we_y,we_z\n";
  for (const LogRecord& r : log.records) {
    const TrackingError e = tracking_error(r);
    Row(out).num(r.t).num(e.q_e.w).vec(e.q_e.v).vec(e.omega_e);
  }
}

nlohmann::json metrics_to_json(const RunMetrics& m) {
  nlohmann::json j;
  j["rmse_position"] = m.rmse_position;
  j["rmse_attitude"] = m.rmse_attitude;
  j["settling_time"] = m.settling_time ? nlohmann::json(*m.settling_time) : nlohmann::json(nullptr);
  j["control_effort"] = m.control_effort;
  j["saturation_fraction"] = m.saturation_fraction;
  j["failed"] = m.failed;
  j["peak_position_error"] = m.peak_position_error;
  j["peak_rate_error"] = m.peak_rate_error;
  return j;
}

nlohmann::json run_summary_json(const SimLog& log, const RunMetrics& m) {
  nlohmann::json j = metrics_to_json(m);
  j["scenario"] = log.scenario_id;
  j["controller"] = log.controller_id;
  j["records"] = log.records.size();
  j["aborted"] = log.aborted;
  if (log.aborted) j["abort_message"] = log.abort_message;
  if (log.controller_failed) j["failure_time"] = log.failure_time;
  return j;
}

nlohmann::json report_to_json(const ComparisonReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  nlohmann::json runs = nlohmann::json::object();
  for (const ComparisonEntry& e : r.runs) {
    nlohmann::json m = metrics_to_json(e.metrics);
    m["aborted"] = e.aborted;
    runs[e.controller] = m;
  }
  j["runs"] = runs;
  nlohmann::json ord = nlohmann::json::array();
  for (const PairwiseOrdering& o : r.orderings) {
    const char* rel = o.order < 0 ? "<" : (o.order > 0 ? ">" : "=");
    ord.push_back({{"metric", o.metric},
                   {"lhs", o.lhs},
                   {"rhs", o.rhs},
                   {"relation", rel},
                   {"lhs_value", std::isfinite(o.lhs_value) ? nlohmann::json(o.lhs_value) : nlohmann::json(nullptr)},
                   {"rhs_value", std::isfinite(o.rhs_value) ? nlohmann::json(o.rhs_value) : nlohmann::json(nullptr)}});
  }
  j["orderings"] = ord;
  return j;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out = open_file(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

void write_run_outputs(const std::filesystem::path& dir, const SimLog& log, const RunMetrics& m) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  const auto states = dir / "states.csv";
  std::ofstream s = open_file(states);
  write_states_csv(s, log);
  finish(s, states);

  const auto controls = dir / "controls.csv";
  std::ofstream c = open_file(controls);
  write_controls_csv(c, log);
  finish(c, controls);

  const auto attitude = dir / "attitude.csv";
  std::ofstream a = open_file(attitude);
  write_attitude_csv(a, log);
  finish(a, attitude);

  write_json_file(dir / "metrics.json", run_summary_json(log, m));
}

}  // namespace quadsmc

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

#include "quadsmc/quadsmc.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <future>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadsmc/config.hpp"
#include "quadsmc/errors.hpp"
#include "quadsmc/io.hpp"

struct qsmc_sim {
  quadsmc::RunConfig config;
  quadsmc::ScenarioConfig scenario;
  std::string controller;
  std::optional<quadsmc::SimLog> log;
  std::optional<quadsmc::RunMetrics> metrics;
};

namespace {

thread_local std::string g_last_error;

qsmc_status fail(qsmc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Translates the exception currently being handled.
qsmc_status translate() {
  try {
    throw;
  } catch (const quadsmc::ConfigError& e) {
    return fail(QSMC_ERR_CONFIG, e.what());
  } catch (const quadsmc::IntegratorAbort& e) {
    return fail(QSMC_ERR_INTEGRATOR, e.what());
  } catch (const quadsmc::IoError& e) {
    return fail(QSMC_ERR_IO, e.what());
  } catch (const quadsmc::DomainError& e) {
    return fail(QSMC_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(QSMC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QSMC_ERR_INTERNAL, "unknown error");
  }
}

template <typename F>
qsmc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (...) {
    return translate();
  }
}

bool is_controller(const std::string& id) {
  for (const auto& c : quadsmc::controller_ids()) {
    if (c == id) return true;
  }
  return false;
}

std::string controller_list() {
  std::string s;
  for (const auto& c : quadsmc::controller_ids()) s += (s.empty() ? "" : ", ") + c;
  return s;
}

void apply_options(const qsmc_run_options* opts, quadsmc::RunConfig& cfg) {
  if (!opts) return;
  if (opts->duration > 0.0) cfg.sim.duration = opts->duration;
  if (opts->dt_physics > 0.0) cfg.sim.dt_physics = opts->dt_physics;
  if (opts->dt_control > 0.0) cfg.sim.dt_control = opts->dt_control;
  if (opts->no_disturbance) cfg.scenario.disturbance = false;
  if (opts->no_uncertainty) cfg.scenario.uncertainty = false;
  if (!std::isfinite(opts->duration) || !std::isfinite(opts->dt_physics) ||
      !std::isfinite(opts->dt_control)) {
    throw quadsmc::ConfigError("run options must be finite");
  }
  cfg.sim.validate();
}

quadsmc::RunConfig load(const char* config_path, const qsmc_run_options* opts) {
  quadsmc::RunConfig cfg = config_path ? quadsmc::load_config(config_path) : quadsmc::RunConfig{};
  apply_options(opts, cfg);
  return cfg;
}

qsmc_status run_status(const quadsmc::SimLog& log) {
  if (log.aborted) return fail(QSMC_ERR_INTEGRATOR, "integrator abort: " + log.abort_message);
  if (log.controller_failed) {
    return fail(QSMC_ERR_CONTROLLER_FAILED,
                "controller '" + log.controller_id + "' flagged failure at t = " +
                    std::to_string(log.failure_time) + " s");
  }
  return QSMC_OK;
}

void copy3(const quadsmc::Vec3& v, double* out) {
  for (int i = 0; i < 3; ++i) out[i] = v[i];
}

void to_c(const quadsmc::RunMetrics& m, qsmc_metrics* out) {
  out->rmse_position = m.rmse_position;
  out->rmse_attitude = m.rmse_attitude;
  out->has_settling_time = m.settling_time.has_value();
  out->settling_time = m.settling_time.value_or(quadsmc::kNaN);
  out->control_effort = m.control_effort;
  out->saturation_fraction = m.saturation_fraction;
  out->failed = m.failed;
  out->peak_position_error = m.peak_position_error;
  out->peak_rate_error = m.peak_rate_error;
}

}  // namespace

extern "C" {

const char* qsmc_version(void) { return "1.0.0"; }

const char* qsmc_last_error(void) { return g_last_error.c_str(); }

const char* qsmc_status_string(qsmc_status status) {
  switch (status) {
    case QSMC_OK: return "ok";
    case QSMC_ERR_CONFIG: return "configuration error";
    case QSMC_ERR_CONTROLLER_FAILED: return "controller failure";
    case QSMC_ERR_INTEGRATOR: return "integrator abort";
    case QSMC_ERR_ARGUMENT: return "invalid argument";
    case QSMC_ERR_IO: return "i/o error";
    case QSMC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

size_t qsmc_controller_count(void) { return quadsmc::controller_ids().size(); }

const char* qsmc_controller_id(size_t index) {
  const auto& ids = quadsmc::controller_ids();
  return index < ids.size() ? ids[index].c_str() : nullptr;
}

void qsmc_run_options_init(qsmc_run_options* opts) {
  if (opts) *opts = qsmc_run_options{0.0, 0.0, 0.0, 0, 0};
}

qsmc_status qsmc_sim_create(const char* scenario, const char* controller, const char* config_path,
                            const qsmc_run_options* opts, qsmc_sim** out) {
  return guarded([&] {
    if (!out) return fail(QSMC_ERR_ARGUMENT, "out handle is null");
    *out = nullptr;
    if (!scenario || !controller) return fail(QSMC_ERR_ARGUMENT, "scenario and controller are required");
    if (!is_controller(controller)) {
      return fail(QSMC_ERR_CONFIG, std::string("unknown controller '") + controller +
                                       "' (valid: " + controller_list() + ")");
    }
    auto sim = std::make_unique<qsmc_sim>();
    sim->config = load(config_path, opts);
    sim->scenario = quadsmc::build_scenario(scenario, sim->config.scenario);
    sim->controller = controller;
    *out = sim.release();
    return QSMC_OK;
  });
}

void qsmc_sim_destroy(qsmc_sim* sim) { delete sim; }

qsmc_status qsmc_sim_run(qsmc_sim* sim) {
  return guarded([&] {
    if (!sim) return fail(QSMC_ERR_ARGUMENT, "sim handle is null");
    sim->log = quadsmc::run_scenario(sim->scenario, sim->controller, sim->config.gains,
                                     sim->config.sim, sim->config.models);
    sim->metrics = sim->log->records.empty() ? std::nullopt
                                             : std::optional(quadsmc::compute_metrics(*sim->log));
    return run_status(*sim->log);
  });
}

qsmc_status qsmc_sim_record_count(const qsmc_sim* sim, size_t* count) {
  if (!sim || !count) return fail(QSMC_ERR_ARGUMENT, "null argument");
  *count = sim->log ? sim->log->records.size() : 0;
  return QSMC_OK;
}

qsmc_status qsmc_sim_record(const qsmc_sim* sim, size_t index, qsmc_record* out) {
  if (!sim || !out) return fail(QSMC_ERR_ARGUMENT, "null argument");
  if (!sim->log || index >= sim->log->records.size()) {
    return fail(QSMC_ERR_ARGUMENT, "record index out of range");
  }
  const quadsmc::LogRecord& r = sim->log->records[index];
  out->t = r.t;
  copy3(r.state.position, out->position);
  copy3(r.state.velocity, out->velocity);
  out->attitude[0] = r.state.attitude.w;
  copy3(r.state.attitude.v, out->attitude + 1);
  copy3(r.state.angular_velocity, out->angular_velocity);
  copy3(r.ref.position, out->ref_position);
  for (int i = 0; i < 4; ++i) {
    out->u[i] = r.command.u[i];
    out->saturated[i] = r.command.saturated[i];
  }
  out->f_cmd = r.command.f_cmd;
  copy3(r.command.tau_cmd, out->tau_cmd);
  out->f = r.command.f;
  copy3(r.command.tau, out->tau);
  copy3(r.diag.s_xi, out->s_xi);
  copy3(r.diag.s_q, out->s_q);
  out->lyapunov = r.diag.lyapunov;
  out->controller_tick = r.controller_tick;
  out->controller_failed = r.diag.controller_failed;
  return QSMC_OK;
}

qsmc_status qsmc_sim_metrics(const qsmc_sim* sim, qsmc_metrics* out) {
  if (!sim || !out) return fail(QSMC_ERR_ARGUMENT, "null argument");
  if (!sim->metrics) return fail(QSMC_ERR_ARGUMENT, "no completed run");
  to_c(*sim->metrics, out);
  return QSMC_OK;
}

qsmc_status qsmc_sim_write_outputs(const qsmc_sim* sim, const char* out_dir) {
  return guarded([&] {
    if (!sim || !out_dir) return fail(QSMC_ERR_ARGUMENT, "null argument");
    if (!sim->log || !sim->metrics) return fail(QSMC_ERR_ARGUMENT, "no completed run");
    quadsmc::write_run_outputs(out_dir, *sim->log, *sim->metrics);
    return QSMC_OK;
  });
}

qsmc_status qsmc_compare(const char* scenario, const char* config_path,
                         const qsmc_run_options* opts, const char* out_dir) {
  return guarded([&] {
    if (!scenario || !out_dir) return fail(QSMC_ERR_ARGUMENT, "scenario and out_dir are required");
    const quadsmc::RunConfig cfg = load(config_path, opts);
    const quadsmc::ScenarioConfig sc = quadsmc::build_scenario(scenario, cfg.scenario);
    const std::filesystem::path root(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) return fail(QSMC_ERR_IO, "cannot create '" + root.string() + "': " + ec.message());

    std::vector<std::future<quadsmc::ComparisonEntry>> jobs;
    for (const std::string& id : quadsmc::controller_ids()) {
      jobs.push_back(std::async(std::launch::async, [&cfg, &sc, &root, id] {
        const quadsmc::SimLog log = quadsmc::run_scenario(sc, id, cfg.gains, cfg.sim, cfg.models);
        quadsmc::ComparisonEntry entry{id, quadsmc::compute_metrics(log), log.aborted};
        quadsmc::write_run_outputs(root / id, log, entry.metrics);
        return entry;
      }));
    }
    std::vector<quadsmc::ComparisonEntry> entries;
    for (auto& job : jobs) entries.push_back(job.get());
    const quadsmc::ComparisonReport report = quadsmc::make_report(sc.id, std::move(entries));
    quadsmc::write_json_file(root / "report.json", quadsmc::report_to_json(report));
    return QSMC_OK;
  });
}

}  // extern "C"

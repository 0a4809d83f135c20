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

// quadsmc command-line driver.
//
//   quadsmc run --scenario ID --controller ID [--config FILE] --out DIR
//               [--duration S] [--dt-physics S] [--dt-control S]
//               [--no-disturbance] [--no-uncertainty]
//   quadsmc compare --scenario ID [--config FILE] --out DIR
//
// Exit codes: 0 success, 1 configuration error, 2 controller failure,
// 3 integrator abort, 4 any other error (I/O, internal).

#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "quadsmc/quadsmc.h"

namespace {

constexpr int kExitOther = 4;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("quadsmc");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("QUADSMC_LOG_LEVEL")) {
    const std::string lvl(env);
    if (lvl == "error") spdlog::set_level(spdlog::level::err);
    else if (lvl == "warn") spdlog::set_level(spdlog::level::warn);
    else if (lvl == "info") spdlog::set_level(spdlog::level::info);
    else if (lvl == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("ignoring QUADSMC_LOG_LEVEL='{}' (expected error, warn, info or debug)", lvl);
  }
}

int exit_code(qsmc_status s) {
  switch (s) {
    case QSMC_OK: return 0;
    case QSMC_ERR_CONFIG: return 1;
    case QSMC_ERR_CONTROLLER_FAILED: return 2;
    case QSMC_ERR_INTEGRATOR: return 3;
    default: return kExitOther;
  }
}

const char* nullable(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

struct RunArgs {
  std::string scenario;
  std::string controller;
  std::string config;
  std::string out;
  qsmc_run_options opts{};
};

int do_run(RunArgs& a) {
  qsmc_sim* sim = nullptr;
  qsmc_status s = qsmc_sim_create(a.scenario.c_str(), a.controller.c_str(), nullable(a.config),
                                  &a.opts, &sim);
  if (s != QSMC_OK) {
    spdlog::error("{}", qsmc_last_error());
    return exit_code(s);
  }
  spdlog::info("running {} with {}", a.scenario, a.controller);
  const qsmc_status run = qsmc_sim_run(sim);
  if (run != QSMC_OK) {
    spdlog::error("{}", qsmc_last_error());
    if (run != QSMC_ERR_CONTROLLER_FAILED && run != QSMC_ERR_INTEGRATOR) {
      qsmc_sim_destroy(sim);
      return exit_code(run);
    }
  }
  s = qsmc_sim_write_outputs(sim, a.out.c_str());
  if (s != QSMC_OK) {
    spdlog::error("{}", qsmc_last_error());
    qsmc_sim_destroy(sim);
    return run != QSMC_OK ? exit_code(run) : exit_code(s);
  }
  qsmc_metrics m{};
  if (qsmc_sim_metrics(sim, &m) == QSMC_OK) {
    spdlog::info("rmse_position {:.6g} m, rmse_attitude {:.6g} rad, effort {:.6g} N s, saturation {:.4f}",
                 m.rmse_position, m.rmse_attitude, m.control_effort, m.saturation_fraction);
  }
  spdlog::debug("outputs written to {}", a.out);
  qsmc_sim_destroy(sim);
  return exit_code(run);
}

int do_compare(RunArgs& a) {
  spdlog::info("comparing all controllers on {}", a.scenario);
  const qsmc_status s = qsmc_compare(a.scenario.c_str(), nullable(a.config), &a.opts, a.out.c_str());
  if (s != QSMC_OK) {
    spdlog::error("{}", qsmc_last_error());
    return exit_code(s);
  }
  spdlog::info("report written to {}/report.json", a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Quadrotor sliding mode control simulator and benchmark"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qsmc_version());

  RunArgs run_args;
  qsmc_run_options_init(&run_args.opts);
  bool no_disturbance = false;
  bool no_uncertainty = false;
  CLI::App* run = app.add_subcommand("run", "Simulate one scenario with one controller");
  run->add_option("--scenario", run_args.scenario, "flip, flip-inverted or lemniscate")->required();
  run->add_option("--controller", run_args.controller, "proposed, geometric, euler-smc or quat-pd")
      ->required();
  run->add_option("--config", run_args.config, "JSON configuration file");
  run->add_option("--out", run_args.out, "Output directory")->required();
  run->add_option("--duration", run_args.opts.duration, "Override duration [s]")->check(CLI::PositiveNumber);
  run->add_option("--dt-physics", run_args.opts.dt_physics, "Override plant step [s]")->check(CLI::PositiveNumber);
  run->add_option("--dt-control", run_args.opts.dt_control, "Override control period [s]")->check(CLI::PositiveNumber);
  run->add_flag("--no-disturbance", no_disturbance, "Disable external disturbances");
  run->add_flag("--no-uncertainty", no_uncertainty, "Give controllers the true model");

  RunArgs cmp_args;
  qsmc_run_options_init(&cmp_args.opts);
  CLI::App* compare = app.add_subcommand("compare", "Run all controllers on one scenario");
  compare->add_option("--scenario", cmp_args.scenario, "flip, flip-inverted or lemniscate")->required();
  compare->add_option("--config", cmp_args.config, "JSON configuration file");
  compare->add_option("--out", cmp_args.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  run_args.opts.no_disturbance = no_disturbance;
  run_args.opts.no_uncertainty = no_uncertainty;

  if (*run) return do_run(run_args);
  return do_compare(cmp_args);
}

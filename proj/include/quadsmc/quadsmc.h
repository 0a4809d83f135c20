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

/*
 * quadsmc C API.
 *
 * Every function returns a qsmc_status; on failure a thread-local message is
 * available from qsmc_last_error() until the next call on the same thread.
 * Handles are not thread-safe; distinct handles may be used concurrently.
 */

#ifndef QUADSMC_QUADSMC_H_
#define QUADSMC_QUADSMC_H_

#include <stddef.h>

#if defined(_WIN32)
#define QSMC_API __declspec(dllexport)
#else
#define QSMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsmc_status {
  QSMC_OK = 0,
  QSMC_ERR_CONFIG = 1,             /* bad config file, unknown id, bad option */
  QSMC_ERR_CONTROLLER_FAILED = 2,  /* run completed, controller flagged failure */
  QSMC_ERR_INTEGRATOR = 3,         /* run aborted on a non-finite state */
  QSMC_ERR_ARGUMENT = 4,           /* null pointer, index out of range, wrong state */
  QSMC_ERR_IO = 5,
  QSMC_ERR_INTERNAL = 6
} qsmc_status;

typedef struct qsmc_sim qsmc_sim;

/* Overrides applied on top of the config file. Non-positive durations and
 * steps mean "keep". */
typedef struct qsmc_run_options {
  double duration;
  double dt_physics;
  double dt_control;
  int no_disturbance;
  int no_uncertainty;
} qsmc_run_options;

typedef struct qsmc_metrics {
  double rmse_position;
  double rmse_attitude;
  double settling_time; /* NaN when has_settling_time == 0 */
  int has_settling_time;
  double control_effort;
  double saturation_fraction;
  int failed;
  double peak_position_error;
  double peak_rate_error;
} qsmc_metrics;

typedef struct qsmc_record {
  double t;
  double position[3];
  double velocity[3];
  double attitude[4]; /* w, x, y, z */
  double angular_velocity[3];
  double ref_position[3];
  double u[4];
  double f_cmd;
  double tau_cmd[3];
  double f;
  double tau[3];
  int saturated[4];
  double s_xi[3];
  double s_q[3];
  double lyapunov;
  int controller_tick;
  int controller_failed;
} qsmc_record;

QSMC_API const char* qsmc_version(void);
QSMC_API const char* qsmc_last_error(void);
QSMC_API const char* qsmc_status_string(qsmc_status status);

QSMC_API size_t qsmc_controller_count(void);
/* NULL when out of range. */
QSMC_API const char* qsmc_controller_id(size_t index);

QSMC_API void qsmc_run_options_init(qsmc_run_options* opts);

/* config_path may be NULL for the built-in defaults; opts may be NULL. */
QSMC_API qsmc_status qsmc_sim_create(const char* scenario, const char* controller,
                                     const char* config_path, const qsmc_run_options* opts,
                                     qsmc_sim** out);
QSMC_API void qsmc_sim_destroy(qsmc_sim* sim);

/* Runs to completion. Returns QSMC_OK, QSMC_ERR_CONTROLLER_FAILED or
 * QSMC_ERR_INTEGRATOR; in the last two cases the log is still available. */
QSMC_API qsmc_status qsmc_sim_run(qsmc_sim* sim);

QSMC_API qsmc_status qsmc_sim_record_count(const qsmc_sim* sim, size_t* count);
QSMC_API qsmc_status qsmc_sim_record(const qsmc_sim* sim, size_t index, qsmc_record* out);
QSMC_API qsmc_status qsmc_sim_metrics(const qsmc_sim* sim, qsmc_metrics* out);
/* Writes states.csv, controls.csv, attitude.csv and metrics.json. */
QSMC_API qsmc_status qsmc_sim_write_outputs(const qsmc_sim* sim, const char* out_dir);

/* Runs all four controllers on one scenario (concurrently), writing one
 * subdirectory per controller and out_dir/report.json. Individual failed or
 * aborted runs are recorded in the report and do not fail the call. */
QSMC_API qsmc_status qsmc_compare(const char* scenario, const char* config_path,
                                  const qsmc_run_options* opts, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* QUADSMC_QUADSMC_H_ */

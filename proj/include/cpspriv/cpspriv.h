/*
 * Copyright 2026 The cpspriv Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

/*
 * C interface to the cpspriv library.
 *
 * Every function returns a cpspriv_status (or a plain value where noted).
 * On failure the message of the most recent error on the calling thread is
 * available from cpspriv_last_error(). Handles are opaque and owned by the
 * caller; destroy functions accept NULL.
 */
#ifndef CPSPRIV_CPSPRIV_H
#define CPSPRIV_CPSPRIV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CPSPRIV_BUILDING_LIBRARY)
#define CPSPRIV_API __declspec(dllexport)
#else
#define CPSPRIV_API __declspec(dllimport)
#endif
#else
#define CPSPRIV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpspriv_status {
  CPSPRIV_OK = 0,
  CPSPRIV_ERR_DUPLICATE_NODE_ID,
  CPSPRIV_ERR_UNKNOWN_ENDPOINT,
  CPSPRIV_ERR_NON_POSITIVE_WEIGHT,
  CPSPRIV_ERR_SELF_LOOP,
  CPSPRIV_ERR_UNKNOWN_NODE,
  CPSPRIV_ERR_EIGENVECTOR_NO_CONVERGENCE,
  CPSPRIV_ERR_UNKNOWN_CONDITION,
  CPSPRIV_ERR_NEGATIVE_INPUT,
  CPSPRIV_ERR_CYCLIC_ATTACK_GRAPH,
  CPSPRIV_ERR_INVALID_BOUNDS,
  CPSPRIV_ERR_INVALID_THRESHOLD,
  CPSPRIV_ERR_NON_POSITIVE_EPSILON,
  CPSPRIV_ERR_NON_POSITIVE_SENSITIVITY,
  CPSPRIV_ERR_MISSING_ASSIGNMENT,
  CPSPRIV_ERR_LENGTH_MISMATCH,
  CPSPRIV_ERR_EMPTY_SERIES,
  CPSPRIV_ERR_ZERO_MEAN,
  CPSPRIV_ERR_NON_POSITIVE_INPUT,
  CPSPRIV_ERR_MALFORMED_ROW,
  CPSPRIV_ERR_DUPLICATE_KEY,
  CPSPRIV_ERR_NEGATIVE_CONSUMPTION,
  CPSPRIV_ERR_OUT_OF_RANGE_TIMESTAMP,
  CPSPRIV_ERR_INVALID_COUNT,
  CPSPRIV_ERR_UNMAPPED_HOME,
  CPSPRIV_ERR_INVALID_CONFIG,
  CPSPRIV_ERR_MISSING_SENSITIVITY,
  CPSPRIV_ERR_IO,
  CPSPRIV_ERR_INVALID_ARGUMENT, /* NULL handle or pointer */
  CPSPRIV_ERR_INTERNAL          /* unexpected exception */
} cpspriv_status;

/* Message for the last failure on this thread; "" if none. */
CPSPRIV_API const char* cpspriv_last_error(void);
/* Stable symbolic name, e.g. "InvalidConfig". */
CPSPRIV_API const char* cpspriv_status_name(cpspriv_status status);
/* Process exit code: 0 success, 1 validation error, 2 runtime error. */
CPSPRIV_API int cpspriv_exit_code(cpspriv_status status);
CPSPRIV_API const char* cpspriv_version(void);

/* ---- Run configuration and pipeline commands -------------------------- */

typedef struct cpspriv_config cpspriv_config;

CPSPRIV_API cpspriv_status cpspriv_config_create(cpspriv_config** out);
CPSPRIV_API void cpspriv_config_destroy(cpspriv_config* config);
/* Reads `key = value` lines. */
CPSPRIV_API cpspriv_status cpspriv_config_load_file(cpspriv_config* config, const char* path);
/* Sets one key; '-' and '_' are interchangeable in key names. */
CPSPRIV_API cpspriv_status cpspriv_config_set(cpspriv_config* config, const char* key, const char* value);

CPSPRIV_API cpspriv_status cpspriv_cmd_topology(const cpspriv_config* config);
CPSPRIV_API cpspriv_status cpspriv_cmd_profile(const cpspriv_config* config);
CPSPRIV_API cpspriv_status cpspriv_cmd_privatize(const cpspriv_config* config);
CPSPRIV_API cpspriv_status cpspriv_cmd_compare(const cpspriv_config* config);

/* ---- Topology ---------------------------------------------------------- */

typedef struct cpspriv_topology cpspriv_topology;

CPSPRIV_API cpspriv_status cpspriv_topology_load(const char* path, cpspriv_topology** out);
CPSPRIV_API void cpspriv_topology_destroy(cpspriv_topology* topology);
CPSPRIV_API size_t cpspriv_topology_node_count(const cpspriv_topology* topology);
/* Shortest weighted distance; +infinity when unreachable. */
CPSPRIV_API cpspriv_status cpspriv_topology_distance(const cpspriv_topology* topology, const char* src,
                                                     const char* dst, double* out);

/* ---- Privacy primitives ------------------------------------------------ */

/* One Laplace(0, scale) draw from the stream seeded with `seed`. */
CPSPRIV_API cpspriv_status cpspriv_laplace_sample(double scale, uint64_t seed, double* out);
/* value + Laplace(sensitivity / epsilon) noise. */
CPSPRIV_API cpspriv_status cpspriv_privatize(double value, double sensitivity, double epsilon, uint64_t seed,
                                             double* out);
CPSPRIV_API cpspriv_status cpspriv_epsilon_from_distance(double distance, double th_d, double eps_min,
                                                         double eps_max, uint64_t seed, double* out);
CPSPRIV_API cpspriv_status cpspriv_disclosure_risk(double epsilon, double sensitivity, double delta, double* out);
CPSPRIV_API cpspriv_status cpspriv_risk_score(double plm, double fple, double* out);

/* ---- Budget ledger ----------------------------------------------------- */

typedef struct cpspriv_ledger cpspriv_ledger;

CPSPRIV_API cpspriv_status cpspriv_ledger_create(cpspriv_ledger** out);
CPSPRIV_API void cpspriv_ledger_destroy(cpspriv_ledger* ledger);
CPSPRIV_API cpspriv_status cpspriv_ledger_append(cpspriv_ledger* ledger, const char* node, double epsilon,
                                                 const char* tag);
/* Correctly rounded sum of all appended epsilons. */
CPSPRIV_API cpspriv_status cpspriv_ledger_total(const cpspriv_ledger* ledger, double* out);
CPSPRIV_API size_t cpspriv_ledger_size(const cpspriv_ledger* ledger);

#ifdef __cplusplus
}
#endif

#endif /* CPSPRIV_CPSPRIV_H */

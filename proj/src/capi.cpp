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

#include "cpspriv/cpspriv.h"

#include <exception>
#include <new>
#include <string>

#include "cpspriv/attack_graph.hpp"
#include "cpspriv/error.hpp"
#include "cpspriv/evaluation.hpp"
#include "cpspriv/pipeline.hpp"
#include "cpspriv/privacy.hpp"
#include "cpspriv/topology.hpp"

struct cpspriv_config {
  cpspriv::RunConfig config;
};

struct cpspriv_topology {
  cpspriv::GridTopology topology;
};

struct cpspriv_ledger {
  cpspriv::BudgetLedger ledger;
};

namespace {

thread_local std::string g_last_error;

// Status values mirror ErrorCode order, shifted by one for CPSPRIV_OK.
static_assert(CPSPRIV_ERR_DUPLICATE_NODE_ID == static_cast<int>(cpspriv::ErrorCode::DuplicateNodeId) + 1);
static_assert(CPSPRIV_ERR_IO == static_cast<int>(cpspriv::ErrorCode::Io) + 1);

cpspriv_status to_status(cpspriv::ErrorCode code) { return static_cast<cpspriv_status>(static_cast<int>(code) + 1); }

cpspriv_status fail(cpspriv_status s, const char* message) {
  g_last_error = message;
  return s;
}

template <typename F>
cpspriv_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return CPSPRIV_OK;
  } catch (const cpspriv::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CPSPRIV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CPSPRIV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CPSPRIV_ERR_INTERNAL, "unknown exception");
  }
}

#define CPSPRIV_REQUIRE(ptr)                                                      \
  do {                                                                            \
    if ((ptr) == nullptr) return fail(CPSPRIV_ERR_INVALID_ARGUMENT, #ptr " is NULL"); \
  } while (0)

}  // namespace

extern "C" {

const char* cpspriv_last_error(void) { return g_last_error.c_str(); }

const char* cpspriv_status_name(cpspriv_status status) {
  switch (status) {
    case CPSPRIV_OK: return "Ok";
    case CPSPRIV_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case CPSPRIV_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status > CPSPRIV_OK && status <= CPSPRIV_ERR_IO) {
    // Every ErrorCode name is a string literal, so data() is terminated.
    return cpspriv::to_string(static_cast<cpspriv::ErrorCode>(status - 1)).data();
  }
  return "Unknown";
}

int cpspriv_exit_code(cpspriv_status status) {
  if (status == CPSPRIV_OK) return 0;
  if (status > CPSPRIV_OK && status <= CPSPRIV_ERR_IO) {
    return cpspriv::is_validation_error(static_cast<cpspriv::ErrorCode>(status - 1)) ? 1 : 2;
  }
  return status == CPSPRIV_ERR_INVALID_ARGUMENT ? 1 : 2;
}

const char* cpspriv_version(void) { return CPSPRIV_VERSION; }

cpspriv_status cpspriv_config_create(cpspriv_config** out) {
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = new cpspriv_config{}; });
}

void cpspriv_config_destroy(cpspriv_config* config) { delete config; }

cpspriv_status cpspriv_config_load_file(cpspriv_config* config, const char* path) {
  CPSPRIV_REQUIRE(config);
  CPSPRIV_REQUIRE(path);
  return guarded([&] { config->config.load_file(path); });
}

cpspriv_status cpspriv_config_set(cpspriv_config* config, const char* key, const char* value) {
  CPSPRIV_REQUIRE(config);
  CPSPRIV_REQUIRE(key);
  CPSPRIV_REQUIRE(value);
  return guarded([&] { config->config.set(key, value); });
}

cpspriv_status cpspriv_cmd_topology(const cpspriv_config* config) {
  CPSPRIV_REQUIRE(config);
  return guarded([&] { cpspriv::run_topology(config->config); });
}

cpspriv_status cpspriv_cmd_profile(const cpspriv_config* config) {
  CPSPRIV_REQUIRE(config);
  return guarded([&] { cpspriv::run_profile(config->config); });
}

cpspriv_status cpspriv_cmd_privatize(const cpspriv_config* config) {
  CPSPRIV_REQUIRE(config);
  return guarded([&] { cpspriv::run_privatize(config->config); });
}

cpspriv_status cpspriv_cmd_compare(const cpspriv_config* config) {
  CPSPRIV_REQUIRE(config);
  return guarded([&] { cpspriv::run_compare(config->config); });
}

cpspriv_status cpspriv_topology_load(const char* path, cpspriv_topology** out) {
  CPSPRIV_REQUIRE(path);
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = new cpspriv_topology{cpspriv::load_topology_file(path)}; });
}

void cpspriv_topology_destroy(cpspriv_topology* topology) { delete topology; }

size_t cpspriv_topology_node_count(const cpspriv_topology* topology) {
  return topology ? topology->topology.size() : 0;
}

cpspriv_status cpspriv_topology_distance(const cpspriv_topology* topology, const char* src, const char* dst,
                                         double* out) {
  CPSPRIV_REQUIRE(topology);
  CPSPRIV_REQUIRE(src);
  CPSPRIV_REQUIRE(dst);
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = cpspriv::shortest_distance(topology->topology, src, dst); });
}

cpspriv_status cpspriv_laplace_sample(double scale, uint64_t seed, double* out) {
  CPSPRIV_REQUIRE(out);
  return guarded([&] {
    if (!(scale > 0.0)) throw cpspriv::Error(cpspriv::ErrorCode::NonPositiveInput, "scale must be positive");
    cpspriv::NoiseStream stream(seed);
    *out = cpspriv::laplace_sample(stream, scale);
  });
}

cpspriv_status cpspriv_privatize(double value, double sensitivity, double epsilon, uint64_t seed, double* out) {
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = cpspriv::privatize(value, sensitivity, epsilon, seed); });
}

cpspriv_status cpspriv_epsilon_from_distance(double distance, double th_d, double eps_min, double eps_max,
                                             uint64_t seed, double* out) {
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = cpspriv::epsilon_from_distance(distance, th_d, {eps_min, eps_max}, seed); });
}

cpspriv_status cpspriv_disclosure_risk(double epsilon, double sensitivity, double delta, double* out) {
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = cpspriv::disclosure_risk(epsilon, sensitivity, delta); });
}

cpspriv_status cpspriv_risk_score(double plm, double fple, double* out) {
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = cpspriv::risk_score(plm, fple); });
}

cpspriv_status cpspriv_ledger_create(cpspriv_ledger** out) {
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = new cpspriv_ledger{}; });
}

void cpspriv_ledger_destroy(cpspriv_ledger* ledger) { delete ledger; }

cpspriv_status cpspriv_ledger_append(cpspriv_ledger* ledger, const char* node, double epsilon, const char* tag) {
  CPSPRIV_REQUIRE(ledger);
  CPSPRIV_REQUIRE(node);
  return guarded([&] { ledger->ledger.append(node, epsilon, tag ? tag : ""); });
}

cpspriv_status cpspriv_ledger_total(const cpspriv_ledger* ledger, double* out) {
  CPSPRIV_REQUIRE(ledger);
  CPSPRIV_REQUIRE(out);
  return guarded([&] { *out = ledger->ledger.total(); });
}

size_t cpspriv_ledger_size(const cpspriv_ledger* ledger) { return ledger ? ledger->ledger.size() : 0; }

}  // extern "C"

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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "cpspriv/cpspriv.h"

namespace fs = std::filesystem;

TEST_CASE("status helpers") {
  CHECK(std::string(cpspriv_status_name(CPSPRIV_OK)) == "Ok");
  CHECK(std::string(cpspriv_status_name(CPSPRIV_ERR_INVALID_CONFIG)) == "InvalidConfig");
  CHECK(cpspriv_exit_code(CPSPRIV_OK) == 0);
  CHECK(cpspriv_exit_code(CPSPRIV_ERR_MALFORMED_ROW) == 1);
  CHECK(cpspriv_exit_code(CPSPRIV_ERR_EIGENVECTOR_NO_CONVERGENCE) == 2);
  CHECK(cpspriv_exit_code(CPSPRIV_ERR_IO) == 2);
  CHECK(std::string(cpspriv_version()).size() > 0);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  double out = 0.0;
  CHECK(cpspriv_config_create(nullptr) == CPSPRIV_ERR_INVALID_ARGUMENT);
  CHECK(cpspriv_cmd_topology(nullptr) == CPSPRIV_ERR_INVALID_ARGUMENT);
  CHECK(cpspriv_topology_distance(nullptr, "a", "b", &out) == CPSPRIV_ERR_INVALID_ARGUMENT);
  CHECK(cpspriv_ledger_total(nullptr, &out) == CPSPRIV_ERR_INVALID_ARGUMENT);
  CHECK(cpspriv_privatize(1.0, 1.0, 1.0, 1, nullptr) == CPSPRIV_ERR_INVALID_ARGUMENT);
  CHECK(std::string(cpspriv_last_error()).size() > 0);
  cpspriv_config_destroy(nullptr);
  cpspriv_topology_destroy(nullptr);
  cpspriv_ledger_destroy(nullptr);
  CHECK(cpspriv_topology_node_count(nullptr) == 0);
  CHECK(cpspriv_ledger_size(nullptr) == 0);
}

TEST_CASE("topology handle") {
  cpspriv_topology* t = nullptr;
  REQUIRE(cpspriv_topology_load(CPSPRIV_FIXTURE_DIR "/three_tier.txt", &t) == CPSPRIV_OK);
  CHECK(cpspriv_topology_node_count(t) == 6);
  double d = 0.0;
  CHECK(cpspriv_topology_distance(t, "h2", "c", &d) == CPSPRIV_OK);
  CHECK(d == 3.0);
  CHECK(cpspriv_topology_distance(t, "h2", "nowhere", &d) == CPSPRIV_ERR_UNKNOWN_NODE);
  CHECK(std::string(cpspriv_last_error()).find("nowhere") != std::string::npos);
  cpspriv_topology_destroy(t);

  cpspriv_topology* bad = nullptr;
  CHECK(cpspriv_topology_load(CPSPRIV_FIXTURE_DIR "/no_such_file.txt", &bad) != CPSPRIV_OK);
  CHECK(bad == nullptr);
}

TEST_CASE("primitives") {
  double x = 0.0, y = 0.0;
  CHECK(cpspriv_laplace_sample(1.0, 3, &x) == CPSPRIV_OK);
  CHECK(cpspriv_laplace_sample(1.0, 3, &y) == CPSPRIV_OK);
  CHECK(x == y);
  CHECK(cpspriv_privatize(10.0, 1.0, 1.0, 3, &y) == CPSPRIV_OK);
  CHECK(y == doctest::Approx(10.0 + x));
  CHECK(cpspriv_privatize(10.0, 1.0, 0.0, 3, &y) == CPSPRIV_ERR_NON_POSITIVE_EPSILON);
  CHECK(cpspriv_epsilon_from_distance(2.0, 5.0, 0.1, 1.0, 0, &x) == CPSPRIV_OK);
  CHECK(x == 0.5);
  CHECK(cpspriv_epsilon_from_distance(2.0, 5.0, 1.0, 0.1, 0, &x) == CPSPRIV_ERR_INVALID_BOUNDS);
  CHECK(cpspriv_disclosure_risk(1.0, 1.0, std::log(2.0), &x) == CPSPRIV_OK);
  CHECK(x == doctest::Approx(0.5));
  CHECK(cpspriv_risk_score(0.9, 0.8, &x) == CPSPRIV_OK);
  CHECK(x == 0.9 * 0.8);
  CHECK(cpspriv_risk_score(-1.0, 0.8, &x) == CPSPRIV_ERR_NEGATIVE_INPUT);
}

TEST_CASE("ledger handle") {
  cpspriv_ledger* l = nullptr;
  REQUIRE(cpspriv_ledger_create(&l) == CPSPRIV_OK);
  CHECK(cpspriv_ledger_append(l, "f", 0.6, "fog") == CPSPRIV_OK);
  CHECK(cpspriv_ledger_append(l, "c", 0.8, "cloud") == CPSPRIV_OK);
  CHECK(cpspriv_ledger_append(l, "c", -0.8, "cloud") == CPSPRIV_ERR_NON_POSITIVE_EPSILON);
  double total = 0.0;
  CHECK(cpspriv_ledger_total(l, &total) == CPSPRIV_OK);
  CHECK(total == 1.4);
  CHECK(cpspriv_ledger_size(l) == 2);
  cpspriv_ledger_destroy(l);
}

TEST_CASE("commands through the config handle") {
  const auto dir = fs::temp_directory_path() / "cpspriv_capi_topology";
  fs::remove_all(dir);
  cpspriv_config* c = nullptr;
  REQUIRE(cpspriv_config_create(&c) == CPSPRIV_OK);
  CHECK(cpspriv_config_set(c, "colour", "red") == CPSPRIV_ERR_INVALID_CONFIG);
  CHECK(cpspriv_cmd_topology(c) == CPSPRIV_ERR_INVALID_CONFIG);
  CHECK(cpspriv_config_set(c, "topology", CPSPRIV_FIXTURE_DIR "/two_node.txt") == CPSPRIV_OK);
  CHECK(cpspriv_config_set(c, "out", dir.string().c_str()) == CPSPRIV_OK);
  CHECK(cpspriv_cmd_topology(c) == CPSPRIV_OK);
  CHECK(fs::exists(dir / "topology.json"));
  CHECK(cpspriv_cmd_privatize(c) == CPSPRIV_ERR_MISSING_SENSITIVITY);
  CHECK(cpspriv_config_load_file(c, "/nonexistent.conf") == CPSPRIV_ERR_INVALID_CONFIG);
  cpspriv_config_destroy(c);
}

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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpspriv/evaluation.hpp"
#include "cpspriv/ingestion.hpp"
#include "cpspriv/privacy.hpp"

namespace cpspriv {

enum class AssignmentMode { Udp, PdpDistance, PdpPreference, PdpExplicit };

std::string_view to_string(AssignmentMode m) noexcept;

/// Settings for one pipeline run. Built from `key = value` text plus
/// overrides; later set() calls win. Keys accept '-' or '_' as separator.
class RunConfig {
 public:
  RunConfig();

  /// Parses one setting. Throws Error{InvalidConfig} for unknown keys or
  /// malformed values.
  void set(const std::string& key, const std::string& value);

  /// Reads `key = value` lines; '#' starts a comment line.
  /// Throws Error{InvalidConfig} tagged with the line number.
  void load(std::istream& in);
  void load_file(const std::string& path);

  /// Canonical `key = value` listing of every setting that affects outputs.
  /// The output directory is left out so that runs into different
  /// directories produce identical trees.
  void write(std::ostream& out) const;

  std::uint64_t seed = 0;
  EpsilonBounds bounds;
  std::optional<double> th_d;
  std::optional<double> sensitivity;
  std::optional<double> delta;
  std::vector<CaseSpec> cases;
  AssignmentMode mode = AssignmentMode::Udp;
  double epsilon = 0.6;  // shared epsilon in udp mode
  bool clamp = false;    // floor privatized readings at zero

  std::string topology;
  std::string dataset;
  std::string incidents;
  std::string vulnerabilities;
  std::string dependencies;
  std::string plan;
  std::string aggregation;
  std::string out = "out";

  // Synthetic data and evaluation sizing.
  int homes = 100;
  int minutes = 1440;
  std::size_t seeds = 30;
  int fan_in = 10;
  SyntheticProfile profile;
  std::vector<double> sweep{0.1, 0.2, 0.3, 0.4};
  std::size_t noise_samples = 100000;

 private:
  // Text of every setting as last given (or its default), for write().
  std::map<std::string, std::string> text_;
};

/// Each command writes into `config.out` (created if needed) and copies the
/// effective configuration to `config.txt` there. Outputs depend only on the
/// configuration and the inputs, so repeated runs are byte-identical.
/// Errors surface as cpspriv::Error.
void run_topology(const RunConfig& config);
void run_profile(const RunConfig& config);
void run_privatize(const RunConfig& config);
void run_compare(const RunConfig& config);

}  // namespace cpspriv

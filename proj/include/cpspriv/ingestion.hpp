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
#include <string>
#include <vector>

namespace cpspriv {

inline constexpr int kMinutesPerDay = 1440;
inline constexpr int kBusyStartMinute = 480;  // 08:00
inline constexpr int kBusyEndMinute = 1080;   // 18:00, exclusive

struct ConsumptionRecord {
  std::string home;
  int minute = 0;  // minute of day, [0, 1439]
  double consumption = 0.0;
};

/// One day of per-minute consumption readings.
struct ConsumptionDataset {
  std::vector<ConsumptionRecord> records;

  /// Throws Error{DuplicateKey | NegativeConsumption | OutOfRangeTimestamp}.
  void validate() const;
  double total() const;
};

/// Reads `home_id,timestamp,consumption` rows (fixed header, row order kept).
/// Throws Error{MalformedRow | DuplicateKey | NegativeConsumption |
/// OutOfRangeTimestamp}, each tagged with the offending line.
ConsumptionDataset load_csv(std::istream& in);
ConsumptionDataset load_csv_file(const std::string& path);

void export_csv(std::ostream& out, const ConsumptionDataset& d);

struct SyntheticProfile {
  double base_load = 0.5;
  double busy_multiplier = 2.0;
};

/// Seeded stand-in for a smart-meter day. Home h's reading at minute m is
/// scale_h * base_load * (busy_multiplier during 08:00-18:00, else 1) * jitter,
/// where scale_h ~ U[0.5, 1.5) per home and jitter ~ U[0.5, 1.5) per reading,
/// both with mean 1. Home ids are "h" followed by a zero-padded index.
/// Throws Error{InvalidCount}.
ConsumptionDataset generate_synthetic(int homes, int minutes, std::uint64_t seed,
                                      const SyntheticProfile& profile = {});

/// Two-level aggregation tree: home -> fog node -> single cloud root.
struct AggregationMap {
  std::map<std::string, std::string> home_to_fog;
  std::map<std::string, std::string> fog_to_cloud;

  /// The one cloud root. Throws Error{InvalidConfig} unless exactly one exists.
  std::string cloud() const;
};

/// ceil(homes / 10) fog nodes "fog-1".."fog-F" assigned round-robin in order
/// of first appearance, all feeding "cloud".
AggregationMap default_aggregation_map(const ConsumptionDataset& d, int fan_in = 10);

/// Rows of `child,parent` (fixed header). A child that is a dataset home maps
/// to a fog node; every other child is a fog node mapping to the cloud.
/// Throws Error{MalformedRow | DuplicateKey | InvalidConfig}.
AggregationMap load_aggregation_map(std::istream& in, const ConsumptionDataset& d);
AggregationMap load_aggregation_map_file(const std::string& path, const ConsumptionDataset& d);

enum class AggregationLevel { Fog, Cloud };

struct AggregatedRecord {
  std::string node;
  int minute = 0;
  double value = 0.0;
};

/// Per-minute sums grouped by the target node, ordered by (node, minute).
/// The cloud level sums the fog sums.
/// Throws Error{UnmappedHome}.
std::vector<AggregatedRecord> aggregate(const ConsumptionDataset& d, const AggregationMap& m,
                                        AggregationLevel level);

/// Sums fog-level records (possibly privatized) into cloud-level records.
/// Throws Error{UnmappedHome} for a fog node the map does not know.
std::vector<AggregatedRecord> aggregate_fog_to_cloud(const std::vector<AggregatedRecord>& fog,
                                                     const AggregationMap& m);

}  // namespace cpspriv

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

#include "cpspriv/ingestion.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <utility>

#include "cpspriv/csv.hpp"
#include "cpspriv/error.hpp"
#include "cpspriv/noise_stream.hpp"

namespace cpspriv {

namespace {

constexpr const char* kDatasetHeader = "home_id,timestamp,consumption";
constexpr const char* kMapHeader = "child,parent";

// Shared record checks; `line` is 0 when validating an in-memory dataset.
void check_record(const ConsumptionRecord& r, std::size_t line) {
  auto fail = [&](ErrorCode code, const std::string& msg) {
    if (line) throw Error(code, msg, line);
    throw Error(code, msg);
  };
  if (r.minute < 0 || r.minute >= kMinutesPerDay) {
    fail(ErrorCode::OutOfRangeTimestamp, "timestamp " + std::to_string(r.minute) + " outside [0, 1439]");
  }
  if (r.consumption < 0.0) {
    fail(ErrorCode::NegativeConsumption, "negative consumption for home '" + r.home + "'");
  }
}

std::string key_of(const ConsumptionRecord& r) { return r.home + '\x1f' + std::to_string(r.minute); }

}  // namespace

void ConsumptionDataset::validate() const {
  std::set<std::string> seen;
  for (const auto& r : records) {
    check_record(r, 0);
    if (!seen.insert(key_of(r)).second) {
      throw Error(ErrorCode::DuplicateKey,
                  "duplicate reading for home '" + r.home + "' at minute " + std::to_string(r.minute));
    }
  }
}

double ConsumptionDataset::total() const {
  double t = 0.0;
  for (const auto& r : records) t += r.consumption;
  return t;
}

ConsumptionDataset load_csv(std::istream& in) {
  ConsumptionDataset d;
  std::set<std::string> seen;
  const auto lines = csv::read_lines(in);
  bool header_seen = false;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (csv::is_skippable(lines[n])) continue;
    const auto f = csv::split(lines[n]);
    if (!header_seen) {
      if (csv::join(f, ",") != kDatasetHeader) {
        throw Error(ErrorCode::MalformedRow, std::string("expected header '") + kDatasetHeader + "'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (f.size() != 3 || f[0].empty()) {
      throw Error(ErrorCode::MalformedRow, "expected home_id,timestamp,consumption", line_no);
    }
    const auto minute = csv::parse_int(f[1]);
    const auto value = csv::parse_double(f[2]);
    if (!minute) throw Error(ErrorCode::MalformedRow, "bad timestamp '" + f[1] + "'", line_no);
    if (!value) throw Error(ErrorCode::MalformedRow, "bad consumption '" + f[2] + "'", line_no);
    if (*minute < 0 || *minute >= kMinutesPerDay) {
      throw Error(ErrorCode::OutOfRangeTimestamp, "timestamp " + f[1] + " outside [0, 1439]", line_no);
    }
    ConsumptionRecord r{f[0], static_cast<int>(*minute), *value};
    check_record(r, line_no);
    if (!seen.insert(key_of(r)).second) {
      throw Error(ErrorCode::DuplicateKey,
                  "duplicate reading for home '" + r.home + "' at minute " + f[1], line_no);
    }
    d.records.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorCode::MalformedRow, std::string("missing header '") + kDatasetHeader + "'");
  return d;
}

ConsumptionDataset load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open dataset '" + path + "'");
  return load_csv(in);
}

void export_csv(std::ostream& out, const ConsumptionDataset& d) {
  out << kDatasetHeader << '\n';
  for (const auto& r : d.records) {
    out << r.home << ',' << r.minute << ',' << csv::format_double(r.consumption) << '\n';
  }
}

ConsumptionDataset generate_synthetic(int homes, int minutes, std::uint64_t seed,
                                      const SyntheticProfile& profile) {
  if (homes < 1) throw Error(ErrorCode::InvalidCount, "homes must be >= 1");
  if (minutes < 1 || minutes > kMinutesPerDay) throw Error(ErrorCode::InvalidCount, "minutes must be in [1, 1440]");
  if (!(profile.base_load > 0.0) || !(profile.busy_multiplier > 0.0)) {
    throw Error(ErrorCode::InvalidCount, "base load and busy multiplier must be positive");
  }

  const auto width = std::to_string(homes).size();
  ConsumptionDataset d;
  d.records.reserve(static_cast<std::size_t>(homes) * static_cast<std::size_t>(minutes));
  for (int h = 1; h <= homes; ++h) {
    auto digits = std::to_string(h);
    const std::string id = "h" + std::string(width - digits.size(), '0') + digits;
    NoiseStream stream(seed, "synthetic/" + id);
    const double scale = stream.uniform(0.5, 1.5);
    for (int m = 0; m < minutes; ++m) {
      const bool busy = m >= kBusyStartMinute && m < kBusyEndMinute;
      const double shape = busy ? profile.busy_multiplier : 1.0;
      d.records.push_back({id, m, scale * profile.base_load * shape * stream.uniform(0.5, 1.5)});
    }
  }
  return d;
}

std::string AggregationMap::cloud() const {
  std::set<std::string> roots;
  for (const auto& [fog, cloud] : fog_to_cloud) roots.insert(cloud);
  if (roots.size() != 1) {
    throw Error(ErrorCode::InvalidConfig,
                "aggregation map needs exactly one cloud root, found " + std::to_string(roots.size()));
  }
  return *roots.begin();
}

AggregationMap default_aggregation_map(const ConsumptionDataset& d, int fan_in) {
  if (fan_in < 1) throw Error(ErrorCode::InvalidCount, "fog fan-in must be >= 1");
  std::vector<std::string> homes;
  std::set<std::string> seen;
  for (const auto& r : d.records) {
    if (seen.insert(r.home).second) homes.push_back(r.home);
  }
  const std::size_t fogs = std::max<std::size_t>(1, (homes.size() + fan_in - 1) / fan_in);
  AggregationMap m;
  for (std::size_t i = 0; i < homes.size(); ++i) {
    m.home_to_fog.emplace(homes[i], "fog-" + std::to_string(i % fogs + 1));
  }
  for (std::size_t f = 1; f <= fogs; ++f) m.fog_to_cloud.emplace("fog-" + std::to_string(f), "cloud");
  return m;
}

AggregationMap load_aggregation_map(std::istream& in, const ConsumptionDataset& d) {
  std::set<std::string> homes;
  for (const auto& r : d.records) homes.insert(r.home);

  AggregationMap m;
  const auto lines = csv::read_lines(in);
  bool header_seen = false;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (csv::is_skippable(lines[n])) continue;
    const auto f = csv::split(lines[n]);
    if (!header_seen) {
      if (csv::join(f, ",") != kMapHeader) {
        throw Error(ErrorCode::MalformedRow, std::string("expected header '") + kMapHeader + "'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw Error(ErrorCode::MalformedRow, "expected child,parent", line_no);
    }
    auto& target = homes.count(f[0]) ? m.home_to_fog : m.fog_to_cloud;
    if (!target.emplace(f[0], f[1]).second) {
      throw Error(ErrorCode::DuplicateKey, "child '" + f[0] + "' mapped twice", line_no);
    }
  }
  if (!header_seen) throw Error(ErrorCode::MalformedRow, std::string("missing header '") + kMapHeader + "'");
  for (const auto& [home, fog] : m.home_to_fog) {
    if (!m.fog_to_cloud.count(fog)) {
      throw Error(ErrorCode::InvalidConfig, "fog node '" + fog + "' has no cloud parent");
    }
  }
  m.cloud();
  return m;
}

AggregationMap load_aggregation_map_file(const std::string& path, const ConsumptionDataset& d) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open aggregation map '" + path + "'");
  return load_aggregation_map(in, d);
}

namespace {

std::vector<AggregatedRecord> flatten(std::map<std::pair<std::string, int>, double>& sums) {
  std::vector<AggregatedRecord> out;
  out.reserve(sums.size());
  for (auto& [key, v] : sums) out.push_back({key.first, key.second, v});
  return out;
}

}  // namespace

std::vector<AggregatedRecord> aggregate(const ConsumptionDataset& d, const AggregationMap& m,
                                        AggregationLevel level) {
  std::map<std::pair<std::string, int>, double> fog;
  for (const auto& r : d.records) {
    const auto it = m.home_to_fog.find(r.home);
    if (it == m.home_to_fog.end()) {
      throw Error(ErrorCode::UnmappedHome, "home '" + r.home + "' has no fog node");
    }
    fog[{it->second, r.minute}] += r.consumption;
  }
  auto fog_records = flatten(fog);
  if (level == AggregationLevel::Fog) return fog_records;
  return aggregate_fog_to_cloud(fog_records, m);
}

std::vector<AggregatedRecord> aggregate_fog_to_cloud(const std::vector<AggregatedRecord>& fog,
                                                     const AggregationMap& m) {
  std::map<std::pair<std::string, int>, double> cloud;
  for (const auto& r : fog) {
    const auto it = m.fog_to_cloud.find(r.node);
    if (it == m.fog_to_cloud.end()) {
      throw Error(ErrorCode::UnmappedHome, "fog node '" + r.node + "' has no cloud parent");
    }
    cloud[{it->second, r.minute}] += r.value;
  }
  return flatten(cloud);
}

}  // namespace cpspriv

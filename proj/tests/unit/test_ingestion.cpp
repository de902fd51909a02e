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

#include <set>
#include <sstream>

#include "cpspriv/error.hpp"
#include "cpspriv/ingestion.hpp"

using namespace cpspriv;

namespace {

ConsumptionDataset parse(const std::string& text) {
  std::istringstream in(text);
  return load_csv(in);
}

std::pair<ErrorCode, std::size_t> failure(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return {e.code(), e.line()};
  }
  return {ErrorCode::Io, 0};
}

const char* kHeader = "home_id,timestamp,consumption\n";

}  // namespace

TEST_CASE("dataset round trip keeps row order") {
  const auto d = parse(std::string(kHeader) + "b,1,0.25\na,0,1.5\n\nb,0,0\n");
  REQUIRE(d.records.size() == 3);
  CHECK(d.records[0].home == "b");
  CHECK(d.records[1].consumption == 1.5);
  CHECK(d.total() == 1.75);

  std::ostringstream out;
  export_csv(out, d);
  const auto again = parse(out.str());
  REQUIRE(again.records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(again.records[i].home == d.records[i].home);
    CHECK(again.records[i].minute == d.records[i].minute);
    CHECK(again.records[i].consumption == d.records[i].consumption);
  }
}

TEST_CASE("dataset errors carry the line") {
  using P = std::pair<ErrorCode, std::size_t>;
  CHECK(failure(std::string(kHeader) + "a,0,1\na,0,2\n") == P{ErrorCode::DuplicateKey, 3});
  CHECK(failure(std::string(kHeader) + "a,0,-1\n") == P{ErrorCode::NegativeConsumption, 2});
  CHECK(failure(std::string(kHeader) + "a,1440,1\n") == P{ErrorCode::OutOfRangeTimestamp, 2});
  CHECK(failure(std::string(kHeader) + "a,-1,1\n") == P{ErrorCode::OutOfRangeTimestamp, 2});
  CHECK(failure(std::string(kHeader) + "a,x,1\n") == P{ErrorCode::MalformedRow, 2});
  CHECK(failure(std::string(kHeader) + "a,0\n") == P{ErrorCode::MalformedRow, 2});
  CHECK(failure("home,ts,value\n").first == ErrorCode::MalformedRow);
  CHECK(failure("").first == ErrorCode::MalformedRow);
  CHECK_THROWS_AS(load_csv_file(CPSPRIV_FIXTURE_DIR "/missing.csv"), Error);
}

TEST_CASE("validate mirrors the loader checks") {
  ConsumptionDataset d;
  d.records = {{"a", 0, 1.0}, {"a", 0, 2.0}};
  CHECK_THROWS_AS(d.validate(), Error);
  d.records = {{"a", 0, -0.5}};
  CHECK_THROWS_AS(d.validate(), Error);
  d.records = {{"a", 2000, 0.5}};
  CHECK_THROWS_AS(d.validate(), Error);
  d.records = {{"a", 0, 0.5}, {"b", 0, 0.5}};
  CHECK_NOTHROW(d.validate());
}

TEST_CASE("synthetic day") {
  const auto d = generate_synthetic(12, 1440, 7);
  REQUIRE(d.records.size() == 12 * 1440);
  CHECK(d.records.front().home == "h01");
  CHECK(d.records.back().home == "h12");
  CHECK_NOTHROW(d.validate());

  // Per-home scale and jitter both lie in [0.5, 1.5), so readings are
  // bounded by base * shape * [0.25, 2.25).
  double busy = 0.0, quiet = 0.0;
  std::size_t n_busy = 0, n_quiet = 0;
  for (const auto& r : d.records) {
    const bool is_busy = r.minute >= kBusyStartMinute && r.minute < kBusyEndMinute;
    const double shape = is_busy ? 2.0 : 1.0;
    CHECK(r.consumption >= 0.5 * shape * 0.25);
    CHECK(r.consumption < 0.5 * shape * 2.25);
    (is_busy ? busy : quiet) += r.consumption;
    ++(is_busy ? n_busy : n_quiet);
  }
  CHECK(busy / n_busy > 1.5 * quiet / n_quiet);

  const auto same = generate_synthetic(12, 1440, 7);
  CHECK(same.records[500].consumption == d.records[500].consumption);
  CHECK(generate_synthetic(12, 1440, 8).records[500].consumption != d.records[500].consumption);
  // A home's readings do not depend on how many homes are generated.
  CHECK(generate_synthetic(3, 10, 7).records[0].consumption == generate_synthetic(9, 10, 7).records[0].consumption);

  CHECK_THROWS_AS(generate_synthetic(0, 10, 1), Error);
  CHECK_THROWS_AS(generate_synthetic(1, 1441, 1), Error);
  CHECK_THROWS_AS(generate_synthetic(1, 10, 1, {0.0, 2.0}), Error);
}

TEST_CASE("default aggregation map") {
  const auto d = generate_synthetic(23, 2, 1);
  const auto m = default_aggregation_map(d);
  CHECK(m.fog_to_cloud.size() == 3);
  CHECK(m.home_to_fog.size() == 23);
  CHECK(m.home_to_fog.at("h01") == "fog-1");
  CHECK(m.home_to_fog.at("h02") == "fog-2");
  CHECK(m.home_to_fog.at("h04") == "fog-1");
  CHECK(m.cloud() == "cloud");
  CHECK_THROWS_AS(default_aggregation_map(d, 0), Error);
  CHECK(default_aggregation_map(generate_synthetic(1, 1, 1)).fog_to_cloud.size() == 1);
}

TEST_CASE("loaded aggregation map and sums") {
  const auto d = load_csv_file(CPSPRIV_FIXTURE_DIR "/three_tier_dataset.csv");
  const auto m = load_aggregation_map_file(CPSPRIV_FIXTURE_DIR "/aggregation.csv", d);
  CHECK(m.home_to_fog.at("h2") == "f1");
  CHECK(m.fog_to_cloud.at("f2") == "c");
  CHECK(m.cloud() == "c");

  const auto fog = aggregate(d, m, AggregationLevel::Fog);
  const auto cloud = aggregate(d, m, AggregationLevel::Cloud);
  REQUIRE(fog.size() == 4);
  REQUIRE(cloud.size() == 2);
  CHECK(fog[0].node == "f1");
  CHECK(fog[0].minute == 0);
  CHECK(fog[2].node == "f2");

  double raw0 = 0.0;
  for (const auto& r : d.records)
    if (r.minute == 0) raw0 += r.consumption;
  CHECK(cloud[0].value == doctest::Approx(raw0));
  const auto via_fog = aggregate_fog_to_cloud(fog, m);
  for (std::size_t i = 0; i < 2; ++i) CHECK(via_fog[i].value == cloud[i].value);

  auto unknown = fog;
  unknown[0].node = "stray";
  CHECK_THROWS_AS(aggregate_fog_to_cloud(unknown, m), Error);

  AggregationMap partial = m;
  partial.home_to_fog.erase("h3");
  try {
    aggregate(d, partial, AggregationLevel::Fog);
    FAIL("expected an unmapped home");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnmappedHome);
  }
}

TEST_CASE("aggregation map errors") {
  const auto d = load_csv_file(CPSPRIV_FIXTURE_DIR "/three_tier_dataset.csv");
  auto code = [&](const std::string& text) {
    std::istringstream in(text);
    try {
      load_aggregation_map(in, d);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code("child,parent\nh1,f1\nh1,f2\nf1,c\nf2,c\n") == ErrorCode::DuplicateKey);
  CHECK(code("child,parent\nh1,f1\nh2,f1\nh3,f2\nf1,c\n") == ErrorCode::InvalidConfig);
  CHECK(code("child,parent\nh1,f1\nh2,f1\nh3,f1\nf1,c1\nf1x,c2\n") == ErrorCode::InvalidConfig);
  CHECK(code("child,parent\nh1\n") == ErrorCode::MalformedRow);
  CHECK(code("from,to\n") == ErrorCode::MalformedRow);
}

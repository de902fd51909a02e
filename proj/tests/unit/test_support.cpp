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

#include <limits>
#include <set>
#include <sstream>

#include "cpspriv/csv.hpp"
#include "cpspriv/error.hpp"
#include "cpspriv/noise_stream.hpp"

using namespace cpspriv;

TEST_CASE("error codes carry names, lines and exit classes") {
  const Error plain(ErrorCode::SelfLoop, "loop on a");
  CHECK(plain.code() == ErrorCode::SelfLoop);
  CHECK(plain.line() == 0);
  CHECK(std::string(plain.what()) == "loop on a");

  const Error lined(ErrorCode::MalformedRow, "bad row", 7);
  CHECK(lined.line() == 7);
  CHECK(std::string(lined.what()) == "line 7: bad row");

  CHECK(to_string(ErrorCode::MissingSensitivity) == "MissingSensitivity");
  CHECK(is_validation_error(ErrorCode::InvalidConfig));
  CHECK_FALSE(is_validation_error(ErrorCode::EigenvectorNoConvergence));
  CHECK_FALSE(is_validation_error(ErrorCode::Io));
}

TEST_CASE("csv helpers") {
  CHECK(csv::trim("  a b \t") == "a b");
  CHECK(csv::split(" a, b ,,c") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(csv::split("x;y", ';') == std::vector<std::string>{"x", "y"});
  CHECK(csv::is_skippable("   "));
  CHECK(csv::is_skippable("  # note"));
  CHECK_FALSE(csv::is_skippable("a,#b"));

  CHECK(csv::parse_double("2.5") == 2.5);
  CHECK(csv::parse_double("+1e-3") == 0.001);
  CHECK_FALSE(csv::parse_double("1.0x"));
  CHECK_FALSE(csv::parse_double(""));
  CHECK(csv::parse_int("-12") == -12);
  CHECK_FALSE(csv::parse_int("3.5"));
  CHECK(csv::parse_uint64("18446744073709551615") == std::numeric_limits<unsigned long long>::max());
  CHECK_FALSE(csv::parse_uint64("-1"));

  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(1.0) == "1");
  CHECK(csv::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(csv::parse_double(csv::format_double(1.0 / 3.0)) == 1.0 / 3.0);

  std::istringstream in("a\r\nb\n\nc");
  CHECK(csv::read_lines(in) == std::vector<std::string>{"a", "b", "", "c"});
}

TEST_CASE("noise streams are reproducible and keyed") {
  NoiseStream a(42), b(42), c(43);
  const auto a1 = a.next_u64();
  CHECK(a1 == b.next_u64());
  CHECK(a1 != c.next_u64());

  NoiseStream k1(7, "node-1"), k1again(7, "node-1"), k2(7, "node-2");
  const double u = k1.uniform_open();
  CHECK(u == k1again.uniform_open());
  CHECK(u != k2.uniform_open());

  // Known FNV-1a vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("uniform draws stay inside their intervals") {
  NoiseStream s(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    const double c = s.uniform_centered();
    REQUIRE(c > -0.5);
    REQUIRE(c < 0.5);
    REQUIRE(c != 0.0);
    const double r = s.uniform(2.0, 3.0);
    REQUIRE(r >= 2.0);
    REQUIRE(r < 3.0);
  }
}

TEST_CASE("mix64 spreads consecutive seeds") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix64(i));
  CHECK(seen.size() == 1000);
}

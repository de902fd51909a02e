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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small helpers shared by the comma-separated file readers and writers.
// Fields are never quoted; list-valued fields use ';' as the inner separator.
namespace cpspriv::csv {

std::string_view trim(std::string_view s) noexcept;

/// Splits on `sep` and trims every field.
std::vector<std::string> split(std::string_view line, char sep = ',');

/// True for blank lines and lines whose first non-space character is '#'.
bool is_skippable(std::string_view line) noexcept;

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);
std::optional<unsigned long long> parse_uint64(std::string_view s);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Reads the whole stream into lines, dropping a trailing '\r' on each.
std::vector<std::string> read_lines(std::istream& in);

}  // namespace cpspriv::csv

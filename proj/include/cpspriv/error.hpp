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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpspriv {

enum class ErrorCode {
  // topology
  DuplicateNodeId,
  UnknownEndpoint,
  NonPositiveWeight,
  SelfLoop,
  UnknownNode,
  EigenvectorNoConvergence,
  // attack graph
  UnknownCondition,
  NegativeInput,
  CyclicAttackGraph,
  // privacy
  InvalidBounds,
  InvalidThreshold,
  NonPositiveEpsilon,
  NonPositiveSensitivity,
  MissingAssignment,
  // evaluation
  LengthMismatch,
  EmptySeries,
  ZeroMean,
  NonPositiveInput,
  // ingestion
  MalformedRow,
  DuplicateKey,
  NegativeConsumption,
  OutOfRangeTimestamp,
  InvalidCount,
  UnmappedHome,
  // pipeline
  InvalidConfig,
  MissingSensitivity,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures that stem from bad input or configuration (CLI exit
/// code 1); false for runtime failures such as non-convergence or I/O
/// (exit code 2).
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t line);

  ErrorCode code() const noexcept { return code_; }
  /// 1-based input line the error refers to, or 0 when not line-bound.
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_ = 0;
};

}  // namespace cpspriv

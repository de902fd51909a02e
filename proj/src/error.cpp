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

#include "cpspriv/error.hpp"

namespace cpspriv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::EigenvectorNoConvergence: return "EigenvectorNoConvergence";
    case ErrorCode::UnknownCondition: return "UnknownCondition";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::CyclicAttackGraph: return "CyclicAttackGraph";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorCode::NonPositiveSensitivity: return "NonPositiveSensitivity";
    case ErrorCode::MissingAssignment: return "MissingAssignment";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::NegativeConsumption: return "NegativeConsumption";
    case ErrorCode::OutOfRangeTimestamp: return "OutOfRangeTimestamp";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::UnmappedHome: return "UnmappedHome";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MissingSensitivity: return "MissingSensitivity";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  return code != ErrorCode::EigenvectorNoConvergence && code != ErrorCode::Io;
}

namespace {

std::string with_line(const std::string& message, std::size_t line) {
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(with_line(message, line)), code_(code), line_(line) {}

}  // namespace cpspriv

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
#include <random>
#include <string_view>

namespace cpspriv {

/// FNV-1a over the bytes of `key`; used to derive sub-stream seeds.
std::uint64_t fnv1a64(std::string_view key) noexcept;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic random stream backed by std::mt19937_64.
///
/// The engine's output sequence is fixed by the standard, and all real-valued
/// draws are derived here from raw 64-bit words (not through the
/// implementation-defined std distributions), so values are identical across
/// platforms and standard libraries for a given seed and key.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed);
  /// Independent sub-stream keyed by e.g. a node id.
  NoiseStream(std::uint64_t seed, std::string_view key);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open();

  /// Uniform on the open interval (-1/2, 1/2); never exactly 0.
  double uniform_centered() { return uniform_open() - 0.5; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cpspriv

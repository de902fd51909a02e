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

#include "cpspriv/noise_stream.hpp"

namespace cpspriv {

std::uint64_t fnv1a64(std::string_view key) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

NoiseStream::NoiseStream(std::uint64_t seed) : engine_(mix64(seed)) {}

NoiseStream::NoiseStream(std::uint64_t seed, std::string_view key)
    : engine_(mix64(mix64(seed) ^ fnv1a64(key))) {}

double NoiseStream::uniform_open() {
  // 53 random bits centred in their bucket: (k + 1/2) / 2^53, k in [0, 2^53).
  const auto k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double NoiseStream::uniform(double lo, double hi) {
  const auto k = engine_() >> 11;
  return lo + (hi - lo) * (static_cast<double>(k) * 0x1.0p-53);
}

}  // namespace cpspriv

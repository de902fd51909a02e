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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpspriv/noise_stream.hpp"
#include "cpspriv/topology.hpp"

namespace cpspriv {

struct EpsilonBounds {
  double min = 0.1;
  double max = 1.0;

  /// Throws Error{InvalidBounds} unless 0 < min < max and both are finite.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Preference criteria

enum class Level { Low, Medium, High };

std::string_view to_string(Level level) noexcept;

enum class Criterion : std::size_t {
  AccessToNodes,
  AccessFrequency,
  AttackerKnowledge,
  CommunicationMedium,
  OperationalComplexity,
};

inline constexpr std::size_t kCriterionCount = 5;

/// One level per criterion, indexed by Criterion.
struct PrivacyPreference {
  std::array<Level, kCriterionCount> levels{};

  Level& operator[](Criterion c) { return levels[static_cast<std::size_t>(c)]; }
  Level operator[](Criterion c) const { return levels[static_cast<std::size_t>(c)]; }
};

/// The criteria table row for a tier: edge nodes demand the most privacy,
/// cloud nodes the least.
PrivacyPreference preference_for(Tier tier);

/// How strongly a level of a criterion demands privacy, in [0, 1].
/// Attacker background knowledge and communication medium count inversely:
/// a Low rating on those marks the most exposed (edge) position.
double privacy_demand(Criterion c, Level level);

struct PreferenceWeights {
  /// Softmax sharpness per criterion; keep each in (0, 1] so the aggregate
  /// demand stays monotone in every criterion.
  std::array<double, kCriterionCount> k{1.0, 1.0, 1.0, 1.0, 1.0};
};

/// Softmax weights exp(k_i x_i) / sum_m exp(k_m x_m) over the demand scores.
std::array<double, kCriterionCount> preference_softmax(const PrivacyPreference& p,
                                                       const PreferenceWeights& w);

/// Maps a preference to epsilon. The softmax-weighted mean demand d lies in
/// [0, 1]; epsilon = max - d * (max - min), so full demand yields bounds.min
/// (most noise) and no demand yields bounds.max.
/// Throws Error{InvalidBounds}.
double epsilon_from_preference(const PrivacyPreference& p, const PreferenceWeights& w,
                               const EpsilonBounds& bounds);

// ---------------------------------------------------------------------------
// Distance mapping

/// 1/distance clamped into the bounds for 0 < distance <= th_d; a uniform
/// draw from the bounds beyond th_d (including unreachable); bounds.max at
/// distance 0.
/// Throws Error{InvalidBounds | InvalidThreshold | NegativeInput}.
double epsilon_from_distance(double distance, double th_d, const EpsilonBounds& bounds,
                             NoiseStream& stream);
double epsilon_from_distance(double distance, double th_d, const EpsilonBounds& bounds,
                             std::uint64_t seed);

// ---------------------------------------------------------------------------
// Laplace mechanism

struct NoiseParams {
  double sensitivity = 1.0;
  double scale = 1.0;  // b = sensitivity / epsilon
  std::uint64_t seed = 0;

  /// Throws Error{NonPositiveSensitivity | NonPositiveEpsilon}.
  static NoiseParams from_epsilon(double sensitivity, double epsilon, std::uint64_t seed);
};

/// Inverse CDF of Laplace(0, b) at centred uniform u in (-1/2, 1/2).
double laplace_from_uniform(double u, double b);

/// Next Laplace(0, b) draw from the stream.
double laplace_sample(NoiseStream& stream, double b);

/// First draw of the stream seeded with params.seed.
double laplace_sample(const NoiseParams& params);

/// Density of Laplace(mu, b) at z.
double laplace_density(double z, double mu, double b);

/// value + Lap(sensitivity / epsilon).
/// Throws Error{NonPositiveEpsilon | NonPositiveSensitivity}.
double privatize(double value, double sensitivity, double epsilon, NoiseStream& stream);
double privatize(double value, double sensitivity, double epsilon, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Budget accounting

/// Correctly rounded sum (Shewchuk's partials), so the result does not depend
/// on the order of the terms.
double exact_sum(const std::vector<double>& terms);

struct LedgerEntry {
  std::string node;
  double epsilon = 0.0;
  std::string tag;
};

/// Append-only log of privacy budget spent. Appends are serialised so the
/// ledger can be shared by concurrent releases; totals do not depend on the
/// interleaving.
class BudgetLedger {
 public:
  BudgetLedger() = default;
  BudgetLedger(const BudgetLedger& other);
  BudgetLedger& operator=(const BudgetLedger& other);

  /// Throws Error{NonPositiveEpsilon}.
  void append(std::string node, double epsilon, std::string tag);

  std::vector<LedgerEntry> entries() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  double total() const;
  double total_for(std::string_view node) const;
  std::map<std::string, double> totals_by_node() const;

  /// {"entries":[{node,epsilon,tag}...],"total":x,"per_node":{...}}
  void write_json(std::ostream& out) const;

 private:
  mutable std::mutex mutex_;
  std::vector<LedgerEntry> entries_;
};

/// Sequential composition: the sum of every logged epsilon.
double compose(const BudgetLedger& ledger);

// ---------------------------------------------------------------------------
// Plans

enum class PrivacyMode { Pdp, Udp };
enum class EpsilonSource { Distance, Preference, Explicit };

std::string_view to_string(PrivacyMode m) noexcept;
std::string_view to_string(EpsilonSource s) noexcept;

class EpsilonAssignment {
 public:
  /// Throws Error{NonPositiveEpsilon | InvalidBounds}.
  static EpsilonAssignment uniform(double epsilon, const EpsilonBounds& bounds);
  static EpsilonAssignment personalized(std::map<std::string, double> per_node, EpsilonSource source,
                                        const EpsilonBounds& bounds);

  PrivacyMode mode() const noexcept { return mode_; }
  EpsilonSource source() const noexcept { return source_; }
  const std::map<std::string, double>& per_node() const noexcept { return per_node_; }
  std::optional<double> shared() const noexcept { return shared_; }

  /// Throws Error{MissingAssignment}.
  double epsilon_for(std::string_view node) const;

 private:
  PrivacyMode mode_ = PrivacyMode::Udp;
  EpsilonSource source_ = EpsilonSource::Explicit;
  std::map<std::string, double> per_node_;
  std::optional<double> shared_;
};

struct SeriesPoint {
  std::string node;
  double value = 0.0;
};

/// Privatizes every value with its node's epsilon. Each node draws from its
/// own sub-stream of `seed` (keyed by node id), in series order, and every
/// release is logged to `ledger` with `tag`.
/// Throws Error{MissingAssignment | NonPositiveSensitivity}.
std::vector<SeriesPoint> privatize_series(const std::vector<SeriesPoint>& series,
                                          const EpsilonAssignment& plan, double sensitivity,
                                          BudgetLedger& ledger, std::uint64_t seed,
                                          std::string_view tag = "release");

// ---------------------------------------------------------------------------
// Plan derivation from a topology

/// Per-node epsilon from the distance to the nearest cloud-tier node.
/// Nodes beyond th_d (or unreachable) draw from their own sub-stream.
/// Throws Error{InvalidConfig} when the topology has no cloud node.
std::map<std::string, double> distance_epsilons(const GridTopology& t, double th_d,
                                                const EpsilonBounds& bounds, std::uint64_t seed);

/// Per-node epsilon from each node's tier preference row.
std::map<std::string, double> preference_epsilons(const GridTopology& t, const PreferenceWeights& w,
                                                  const EpsilonBounds& bounds);

}  // namespace cpspriv

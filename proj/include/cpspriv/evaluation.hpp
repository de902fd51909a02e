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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpspriv/ingestion.hpp"
#include "cpspriv/privacy.hpp"

namespace cpspriv {

/// Mean absolute error. Throws Error{LengthMismatch | EmptySeries}.
double mae(std::span<const double> original, std::span<const double> privatized);

struct UtilityReport {
  double mae = 0.0;
  double mean = 0.0;     // mean of the original series
  double pd = 0.0;       // mae / |mean|
  double utility = 1.0;  // 1 - pd
};

/// Throws Error{LengthMismatch | EmptySeries | ZeroMean}.
UtilityReport utility(std::span<const double> original, std::span<const double> privatized);

/// Probability that a Laplace(sensitivity / epsilon) perturbation lands within
/// delta of the true value: 1 - exp(-delta * epsilon / sensitivity).
/// Throws Error{NonPositiveInput}.
double disclosure_risk(double epsilon, double sensitivity, double delta);

/// Fraction of releases within delta of the original. Throws like mae().
double empirical_disclosure_risk(std::span<const double> original, std::span<const double> privatized,
                                 double delta);

struct LossDistribution {
  std::vector<double> losses;  // |privatized - original| per record
  double mean = 0.0;
  double stddev = 0.0;  // population
};

/// Throws Error{LengthMismatch}.
LossDistribution loss_distribution(std::span<const double> original, std::span<const double> privatized);

/// Population mean and standard deviation.
struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};
Moments moments(std::span<const double> xs);

// ---------------------------------------------------------------------------
// Fog/cloud case comparison

struct CaseSpec {
  std::string label;
  double eps_fog = 0.6;
  double eps_cloud = 0.6;
};

/// (0.6, 0.6), (0.6, 0.8), (0.8, 0.6), (0.8, 0.8) labelled case1..case4.
std::vector<CaseSpec> reference_cases();

/// Parses "ef:ec[,ef:ec...]" into case1..caseN. An empty string yields no
/// cases. Throws Error{InvalidConfig}.
std::vector<CaseSpec> parse_cases(const std::string& text);

struct LevelSeedResult {
  UtilityReport utility;
  Moments loss;
  double empirical_risk = 0.0;
};

struct LevelResult {
  std::vector<LevelSeedResult> per_seed;
  /// Re-identification window used for this level's risk figures.
  double delta = 0.0;
  /// Closed-form disclosure risk of every node released at this level.
  std::map<std::string, double> analytic_risk;
  double epsilon = 0.0;

  // Means over seeds.
  double mean_mae = 0.0;
  double mean_utility = 0.0;
  double mean_loss = 0.0;
  double mean_loss_std = 0.0;
  double mean_empirical_risk = 0.0;
};

struct CaseResult {
  CaseSpec spec;
  LevelResult fog;
  LevelResult cloud;
  /// Composed budget of each cloud record (fog release + cloud release),
  /// identical for every record.
  double ledger_per_cloud_record = 0.0;
  /// Population variance of the per-node epsilons (fog nodes and cloud);
  /// zero exactly when the case is uniform.
  double plan_epsilon_variance = 0.0;
};

struct CompareOptions {
  double sensitivity = 1.0;
  /// Unset: 1% of each level's raw value range (see default_delta()).
  std::optional<double> delta;
  std::vector<std::uint64_t> seeds;
  EpsilonBounds bounds;
};

struct EvaluationReport {
  std::vector<CaseResult> cases;
  std::vector<std::uint64_t> seeds;
  double sensitivity = 0.0;
};

/// 1% of the value range; falls back to 1% of the largest magnitude, then
/// to 0.01, for constant series.
double default_delta(std::span<const double> values);

/// For each case and seed: privatize the fog sums with eps_fog, sum the noisy
/// fog values into the cloud and privatize again with eps_cloud, then score
/// both levels against the raw aggregates. Noise sub-streams are keyed by
/// (seed, node id) only, so cases share their underlying uniform draws.
/// Throws Error{NonPositiveSensitivity | NonPositiveInput | UnmappedHome | ...}.
EvaluationReport compare_cases(const ConsumptionDataset& d, const AggregationMap& m,
                               const std::vector<CaseSpec>& cases, const CompareOptions& opts);

/// n run seeds derived from a base seed.
std::vector<std::uint64_t> derive_seeds(std::uint64_t base, std::size_t n);

// ---------------------------------------------------------------------------
// Edge-level utility sweep and noise spread

struct SweepPoint {
  double epsilon = 0.0;
  std::vector<UtilityReport> per_seed;
};

/// Uniform privatization of every edge reading at each epsilon.
std::vector<SweepPoint> edge_utility_sweep(const ConsumptionDataset& d, const std::vector<double>& epsilons,
                                           double sensitivity, const std::vector<std::uint64_t>& seeds);

/// Number of seeds where MAE strictly decreases along the sweep.
std::size_t count_strictly_decreasing_mae(const std::vector<SweepPoint>& sweep);

struct NoiseSpread {
  double epsilon = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double bin_width = 0.0;
  double range_lo = 0.0;
  std::vector<std::size_t> histogram;
};

/// Empirical distribution of `samples` Laplace(sensitivity/epsilon) draws,
/// histogrammed over [range_lo, -range_lo).
NoiseSpread noise_spread(double epsilon, double sensitivity, std::size_t samples, std::uint64_t seed,
                         double range_lo = -40.0, std::size_t bins = 80);

// ---------------------------------------------------------------------------
// Trend checks

struct TrendCheck {
  std::string name;
  std::size_t holding = 0;
  std::size_t total = 0;
  std::size_t required = 0;
  bool pass() const { return total > 0 && holding >= required; }
};

/// Seeds in which, for every pair of cases where one is strictly more private
/// at both levels (component-wise smaller epsilons), its cloud-level loss mean
/// and standard deviation are both strictly larger. `required` is
/// ceil(0.9 * seeds).
TrendCheck dominance_ordering(const EvaluationReport& report);

/// Seeds with strictly decreasing MAE along the sweep; `required` is
/// ceil(14/15 * seeds).
TrendCheck sweep_trend(const std::vector<SweepPoint>& sweep);

}  // namespace cpspriv

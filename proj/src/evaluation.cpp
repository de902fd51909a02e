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

#include "cpspriv/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "cpspriv/csv.hpp"
#include "cpspriv/error.hpp"

namespace cpspriv {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "series lengths differ: " + std::to_string(a.size()) + " vs " +
                                               std::to_string(b.size()));
  }
}

void check_nonempty_pair(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  if (a.empty()) throw Error(ErrorCode::EmptySeries, "series is empty");
}

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

double mae(std::span<const double> original, std::span<const double> privatized) {
  check_nonempty_pair(original, privatized);
  double s = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i) s += std::abs(privatized[i] - original[i]);
  return s / static_cast<double>(original.size());
}

UtilityReport utility(std::span<const double> original, std::span<const double> privatized) {
  UtilityReport r;
  r.mae = mae(original, privatized);
  r.mean = mean_of(original);
  if (r.mean == 0.0) throw Error(ErrorCode::ZeroMean, "original series has zero mean");
  r.pd = r.mae / std::abs(r.mean);
  r.utility = 1.0 - r.pd;
  return r;
}

double disclosure_risk(double epsilon, double sensitivity, double delta) {
  for (double v : {epsilon, sensitivity, delta}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NonPositiveInput, "disclosure risk inputs must be positive and finite");
    }
  }
  return -std::expm1(-delta * epsilon / sensitivity);
}

double empirical_disclosure_risk(std::span<const double> original, std::span<const double> privatized,
                                 double delta) {
  check_nonempty_pair(original, privatized);
  std::size_t within = 0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (std::abs(privatized[i] - original[i]) <= delta) ++within;
  }
  return static_cast<double>(within) / static_cast<double>(original.size());
}

Moments moments(std::span<const double> xs) {
  Moments m;
  if (xs.empty()) return m;
  m.mean = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
  return m;
}

LossDistribution loss_distribution(std::span<const double> original, std::span<const double> privatized) {
  check_pair(original, privatized);
  LossDistribution d;
  d.losses.reserve(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) d.losses.push_back(std::abs(privatized[i] - original[i]));
  const auto m = moments(d.losses);
  d.mean = m.mean;
  d.stddev = m.stddev;
  return d;
}

// ---------------------------------------------------------------------------

double default_delta(std::span<const double> values) {
  if (values.empty()) return 0.01;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi > *lo) return 0.01 * (*hi - *lo);
  const double mag = std::max(std::abs(*lo), std::abs(*hi));
  return mag > 0.0 ? 0.01 * mag : 0.01;
}

std::vector<CaseSpec> reference_cases() {
  return {{"case1", 0.6, 0.6}, {"case2", 0.6, 0.8}, {"case3", 0.8, 0.6}, {"case4", 0.8, 0.8}};
}

std::vector<CaseSpec> parse_cases(const std::string& text) {
  std::vector<CaseSpec> out;
  if (csv::trim(text).empty()) return out;
  for (const auto& item : csv::split(text, ',')) {
    const auto parts = csv::split(item, ':');
    const auto ef = parts.size() == 2 ? csv::parse_double(parts[0]) : std::nullopt;
    const auto ec = parts.size() == 2 ? csv::parse_double(parts[1]) : std::nullopt;
    if (!ef || !ec || !(*ef > 0.0) || !(*ec > 0.0)) {
      throw Error(ErrorCode::InvalidConfig,
                  "bad case '" + item + "'; expected eps_fog:eps_cloud[,eps_fog:eps_cloud...]");
    }
    out.push_back({"case" + std::to_string(out.size() + 1), *ef, *ec});
  }
  return out;
}

std::vector<std::uint64_t> derive_seeds(std::uint64_t base, std::size_t n) {
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(mix64(base + i));
  return out;
}

namespace {

std::vector<double> values_of(const std::vector<AggregatedRecord>& rs) {
  std::vector<double> v;
  v.reserve(rs.size());
  for (const auto& r : rs) v.push_back(r.value);
  return v;
}

std::vector<SeriesPoint> points_of(const std::vector<AggregatedRecord>& rs) {
  std::vector<SeriesPoint> v;
  v.reserve(rs.size());
  for (const auto& r : rs) v.push_back({r.node, r.value});
  return v;
}

LevelSeedResult score(const std::vector<double>& raw, const std::vector<double>& noisy, double delta) {
  LevelSeedResult r;
  r.utility = utility(raw, noisy);
  const auto ld = loss_distribution(raw, noisy);
  r.loss = {ld.mean, ld.stddev};
  r.empirical_risk = empirical_disclosure_risk(raw, noisy, delta);
  return r;
}

void summarize(LevelResult& level) {
  const auto n = static_cast<double>(level.per_seed.size());
  if (level.per_seed.empty()) return;
  for (const auto& s : level.per_seed) {
    level.mean_mae += s.utility.mae;
    level.mean_utility += s.utility.utility;
    level.mean_loss += s.loss.mean;
    level.mean_loss_std += s.loss.stddev;
    level.mean_empirical_risk += s.empirical_risk;
  }
  level.mean_mae /= n;
  level.mean_utility /= n;
  level.mean_loss /= n;
  level.mean_loss_std /= n;
  level.mean_empirical_risk /= n;
}

}  // namespace

EvaluationReport compare_cases(const ConsumptionDataset& d, const AggregationMap& m,
                               const std::vector<CaseSpec>& cases, const CompareOptions& opts) {
  EvaluationReport report;
  report.seeds = opts.seeds;
  report.sensitivity = opts.sensitivity;
  if (cases.empty()) return report;
  if (!(opts.sensitivity > 0.0)) throw Error(ErrorCode::NonPositiveSensitivity, "sensitivity must be positive");
  if (opts.delta && !(*opts.delta > 0.0)) throw Error(ErrorCode::NonPositiveInput, "delta must be positive");

  const auto fog_raw = aggregate(d, m, AggregationLevel::Fog);
  const auto cloud_raw = aggregate(d, m, AggregationLevel::Cloud);
  const auto fog_values = values_of(fog_raw);
  const auto cloud_values = values_of(cloud_raw);
  const auto fog_points = points_of(fog_raw);
  const auto cloud_root = m.cloud();
  const double fog_delta = opts.delta.value_or(default_delta(fog_values));
  const double cloud_delta = opts.delta.value_or(default_delta(cloud_values));

  for (const auto& spec : cases) {
    CaseResult cr;
    cr.spec = spec;
    const auto fog_plan = EpsilonAssignment::uniform(spec.eps_fog, opts.bounds);
    const auto cloud_plan = EpsilonAssignment::uniform(spec.eps_cloud, opts.bounds);
    cr.fog.epsilon = spec.eps_fog;
    cr.cloud.epsilon = spec.eps_cloud;
    cr.fog.delta = fog_delta;
    cr.cloud.delta = cloud_delta;

    std::vector<double> plan_eps;
    for (const auto& [fog, parent] : m.fog_to_cloud) {
      cr.fog.analytic_risk[fog] = disclosure_risk(spec.eps_fog, opts.sensitivity, fog_delta);
      plan_eps.push_back(spec.eps_fog);
    }
    cr.cloud.analytic_risk[cloud_root] = disclosure_risk(spec.eps_cloud, opts.sensitivity, cloud_delta);
    plan_eps.push_back(spec.eps_cloud);
    // A uniform plan must report exactly zero, free of mean rounding.
    const auto [lo, hi] = std::minmax_element(plan_eps.begin(), plan_eps.end());
    const auto pm = moments(plan_eps);
    cr.plan_epsilon_variance = *lo == *hi ? 0.0 : pm.stddev * pm.stddev;

    // Budget of one cloud record: the fog release of every contributing home
    // (fog groups are disjoint, so they compose in parallel) then the cloud
    // release on top.
    {
      BudgetLedger chain;
      for (const auto& r : cloud_raw) {
        const auto key = r.node + "@" + std::to_string(r.minute);
        chain.append(key, spec.eps_fog, "fog");
        chain.append(key, spec.eps_cloud, "cloud");
      }
      const auto per_record = chain.totals_by_node();
      cr.ledger_per_cloud_record = per_record.empty() ? 0.0 : per_record.begin()->second;
      for (const auto& [key, total] : per_record) {
        if (total != cr.ledger_per_cloud_record) {
          throw Error(ErrorCode::InvalidConfig, "inconsistent per-record budget at " + key);
        }
      }
    }

    for (const auto seed : opts.seeds) {
      BudgetLedger ledger;
      const auto fog_noisy = privatize_series(fog_points, fog_plan, opts.sensitivity, ledger, seed, "fog");
      std::vector<AggregatedRecord> fog_noisy_records = fog_raw;
      for (std::size_t i = 0; i < fog_noisy.size(); ++i) fog_noisy_records[i].value = fog_noisy[i].value;
      const auto cloud_sums = aggregate_fog_to_cloud(fog_noisy_records, m);
      const auto cloud_noisy =
          privatize_series(points_of(cloud_sums), cloud_plan, opts.sensitivity, ledger, seed, "cloud");

      std::vector<double> fog_out;
      fog_out.reserve(fog_noisy.size());
      for (const auto& p : fog_noisy) fog_out.push_back(p.value);
      std::vector<double> cloud_out;
      cloud_out.reserve(cloud_noisy.size());
      for (const auto& p : cloud_noisy) cloud_out.push_back(p.value);

      cr.fog.per_seed.push_back(score(fog_values, fog_out, fog_delta));
      cr.cloud.per_seed.push_back(score(cloud_values, cloud_out, cloud_delta));
    }
    summarize(cr.fog);
    summarize(cr.cloud);
    report.cases.push_back(std::move(cr));
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<SweepPoint> edge_utility_sweep(const ConsumptionDataset& d, const std::vector<double>& epsilons,
                                           double sensitivity, const std::vector<std::uint64_t>& seeds) {
  std::vector<SeriesPoint> series;
  std::vector<double> original;
  series.reserve(d.records.size());
  original.reserve(d.records.size());
  for (const auto& r : d.records) {
    series.push_back({r.home, r.consumption});
    original.push_back(r.consumption);
  }

  // Bounds wide enough for any positive epsilon in the sweep.
  EpsilonBounds bounds;
  for (double e : epsilons) {
    if (!(e > 0.0)) throw Error(ErrorCode::NonPositiveEpsilon, "sweep epsilons must be positive");
    bounds.min = std::min(bounds.min, e);
    bounds.max = std::max(bounds.max, e);
  }

  std::vector<SweepPoint> out;
  for (double e : epsilons) {
    SweepPoint pt;
    pt.epsilon = e;
    const auto plan = EpsilonAssignment::uniform(e, bounds);
    for (const auto seed : seeds) {
      BudgetLedger ledger;
      const auto noisy = privatize_series(series, plan, sensitivity, ledger, seed, "edge");
      std::vector<double> values;
      values.reserve(noisy.size());
      for (const auto& p : noisy) values.push_back(p.value);
      pt.per_seed.push_back(utility(original, values));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

std::size_t count_strictly_decreasing_mae(const std::vector<SweepPoint>& sweep) {
  if (sweep.empty()) return 0;
  const auto seeds = sweep.front().per_seed.size();
  std::size_t count = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    bool ok = true;
    for (std::size_t i = 1; i < sweep.size() && ok; ++i) {
      ok = sweep[i].per_seed.at(s).mae < sweep[i - 1].per_seed.at(s).mae;
    }
    if (ok) ++count;
  }
  return count;
}

NoiseSpread noise_spread(double epsilon, double sensitivity, std::size_t samples, std::uint64_t seed,
                         double range_lo, std::size_t bins) {
  const auto params = NoiseParams::from_epsilon(sensitivity, epsilon, seed);
  NoiseSpread out;
  out.epsilon = epsilon;
  out.range_lo = range_lo;
  out.bin_width = (-2.0 * range_lo) / static_cast<double>(bins);
  out.histogram.assign(bins, 0);
  NoiseStream stream(seed, "noise-spread");
  std::vector<double> draws;
  draws.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = laplace_sample(stream, params.scale);
    draws.push_back(z);
    const double pos = (z - range_lo) / out.bin_width;
    if (pos >= 0.0 && pos < static_cast<double>(bins)) ++out.histogram[static_cast<std::size_t>(pos)];
  }
  const auto m = moments(draws);
  out.mean = m.mean;
  out.stddev = m.stddev;
  return out;
}

// ---------------------------------------------------------------------------

TrendCheck dominance_ordering(const EvaluationReport& report) {
  TrendCheck t;
  t.name = "cloud loss ordering";
  t.total = report.seeds.size();
  t.required = (9 * t.total + 9) / 10;
  for (std::size_t s = 0; s < t.total; ++s) {
    bool ok = true;
    for (const auto& a : report.cases) {
      for (const auto& b : report.cases) {
        const bool dominates = a.spec.eps_fog <= b.spec.eps_fog && a.spec.eps_cloud <= b.spec.eps_cloud &&
                               (a.spec.eps_fog < b.spec.eps_fog || a.spec.eps_cloud < b.spec.eps_cloud);
        if (!dominates) continue;
        const auto& la = a.cloud.per_seed.at(s).loss;
        const auto& lb = b.cloud.per_seed.at(s).loss;
        ok = ok && la.mean > lb.mean && la.stddev > lb.stddev;
      }
    }
    if (ok) ++t.holding;
  }
  return t;
}

TrendCheck sweep_trend(const std::vector<SweepPoint>& sweep) {
  TrendCheck t;
  t.name = "edge MAE decreasing in epsilon";
  t.total = sweep.empty() ? 0 : sweep.front().per_seed.size();
  t.required = (14 * t.total + 14) / 15;
  t.holding = count_strictly_decreasing_mae(sweep);
  return t;
}

}  // namespace cpspriv

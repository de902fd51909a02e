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

#include "cpspriv/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "cpspriv/error.hpp"

namespace cpspriv {

void EpsilonBounds::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min > 0.0) || !(min < max)) {
    throw Error(ErrorCode::InvalidBounds, "epsilon bounds must satisfy 0 < min < max");
  }
}

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::Low: return "low";
    case Level::Medium: return "medium";
    case Level::High: return "high";
  }
  return "low";
}

PrivacyPreference preference_for(Tier tier) {
  PrivacyPreference p;
  switch (tier) {
    case Tier::Edge:
      p.levels = {Level::High, Level::High, Level::Low, Level::Low, Level::High};
      break;
    case Tier::Fog:
      p.levels = {Level::Medium, Level::Medium, Level::Medium, Level::Medium, Level::Medium};
      break;
    case Tier::Cloud:
      p.levels = {Level::Low, Level::Low, Level::High, Level::High, Level::Low};
      break;
  }
  return p;
}

double privacy_demand(Criterion c, Level level) {
  const double score = level == Level::High ? 1.0 : level == Level::Medium ? 0.5 : 0.0;
  switch (c) {
    case Criterion::AttackerKnowledge:
    case Criterion::CommunicationMedium:
      return 1.0 - score;
    default:
      return score;
  }
}

namespace {

std::array<double, kCriterionCount> demands(const PrivacyPreference& p) {
  std::array<double, kCriterionCount> x{};
  for (std::size_t i = 0; i < kCriterionCount; ++i) {
    x[i] = privacy_demand(static_cast<Criterion>(i), p.levels[i]);
  }
  return x;
}

std::array<double, kCriterionCount> softmax_numerators(const std::array<double, kCriterionCount>& x,
                                                       const PreferenceWeights& w) {
  std::array<double, kCriterionCount> e{};
  for (std::size_t i = 0; i < kCriterionCount; ++i) {
    if (!std::isfinite(w.k[i])) throw Error(ErrorCode::InvalidConfig, "preference weights must be finite");
    e[i] = std::exp(w.k[i] * x[i]);
  }
  return e;
}

}  // namespace

std::array<double, kCriterionCount> preference_softmax(const PrivacyPreference& p,
                                                       const PreferenceWeights& w) {
  auto e = softmax_numerators(demands(p), w);
  double total = 0.0;
  for (double v : e) total += v;
  for (double& v : e) v /= total;
  return e;
}

double epsilon_from_preference(const PrivacyPreference& p, const PreferenceWeights& w,
                               const EpsilonBounds& bounds) {
  bounds.validate();
  const auto x = demands(p);
  const auto e = softmax_numerators(x, w);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < kCriterionCount; ++i) {
    num += e[i] * x[i];
    den += e[i];
  }
  const double demand = std::clamp(num / den, 0.0, 1.0);
  return std::lerp(bounds.max, bounds.min, demand);
}

double epsilon_from_distance(double distance, double th_d, const EpsilonBounds& bounds,
                             NoiseStream& stream) {
  bounds.validate();
  if (!(th_d > 0.0)) throw Error(ErrorCode::InvalidThreshold, "distance threshold must be positive");
  if (!(distance >= 0.0)) throw Error(ErrorCode::NegativeInput, "distance must be non-negative");
  if (distance == 0.0) return bounds.max;
  if (distance <= th_d) return std::clamp(1.0 / distance, bounds.min, bounds.max);
  return std::clamp(stream.uniform(bounds.min, bounds.max), bounds.min, bounds.max);
}

double epsilon_from_distance(double distance, double th_d, const EpsilonBounds& bounds,
                             std::uint64_t seed) {
  NoiseStream stream(seed);
  return epsilon_from_distance(distance, th_d, bounds, stream);
}

// ---------------------------------------------------------------------------

namespace {

void check_sensitivity(double sensitivity) {
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw Error(ErrorCode::NonPositiveSensitivity, "sensitivity must be positive");
  }
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::NonPositiveEpsilon, "epsilon must be positive");
  }
}

}  // namespace

NoiseParams NoiseParams::from_epsilon(double sensitivity, double epsilon, std::uint64_t seed) {
  check_sensitivity(sensitivity);
  check_epsilon(epsilon);
  return {sensitivity, sensitivity / epsilon, seed};
}

double laplace_from_uniform(double u, double b) {
  if (u == 0.0) return 0.0;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -b * sign * std::log1p(-2.0 * std::abs(u));
}

double laplace_sample(NoiseStream& stream, double b) {
  return laplace_from_uniform(stream.uniform_centered(), b);
}

double laplace_sample(const NoiseParams& params) {
  NoiseStream stream(params.seed);
  return laplace_sample(stream, params.scale);
}

double laplace_density(double z, double mu, double b) {
  return std::exp(-std::abs(z - mu) / b) / (2.0 * b);
}

double privatize(double value, double sensitivity, double epsilon, NoiseStream& stream) {
  check_sensitivity(sensitivity);
  check_epsilon(epsilon);
  return value + laplace_sample(stream, sensitivity / epsilon);
}

double privatize(double value, double sensitivity, double epsilon, std::uint64_t seed) {
  NoiseStream stream(seed);
  return privatize(value, sensitivity, epsilon, stream);
}

// ---------------------------------------------------------------------------

double exact_sum(const std::vector<double>& terms) {
  std::vector<double> partials;
  for (double x : terms) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }

  std::size_t n = partials.size();
  if (n == 0) return 0.0;
  double hi = partials[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials[--n];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  // Round-half-even correction when the remaining partials push the
  // discarded tail past the halfway point.
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

BudgetLedger::BudgetLedger(const BudgetLedger& other) : entries_(other.entries()) {}

BudgetLedger& BudgetLedger::operator=(const BudgetLedger& other) {
  if (this != &other) {
    auto copy = other.entries();
    std::lock_guard lock(mutex_);
    entries_ = std::move(copy);
  }
  return *this;
}

void BudgetLedger::append(std::string node, double epsilon, std::string tag) {
  check_epsilon(epsilon);
  std::lock_guard lock(mutex_);
  entries_.push_back({std::move(node), epsilon, std::move(tag)});
}

std::vector<LedgerEntry> BudgetLedger::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

std::size_t BudgetLedger::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

double BudgetLedger::total() const {
  std::vector<double> eps;
  {
    std::lock_guard lock(mutex_);
    eps.reserve(entries_.size());
    for (const auto& e : entries_) eps.push_back(e.epsilon);
  }
  return exact_sum(eps);
}

double BudgetLedger::total_for(std::string_view node) const {
  std::vector<double> eps;
  std::lock_guard lock(mutex_);
  for (const auto& e : entries_) {
    if (e.node == node) eps.push_back(e.epsilon);
  }
  return exact_sum(eps);
}

std::map<std::string, double> BudgetLedger::totals_by_node() const {
  std::map<std::string, std::vector<double>> grouped;
  {
    std::lock_guard lock(mutex_);
    for (const auto& e : entries_) grouped[e.node].push_back(e.epsilon);
  }
  std::map<std::string, double> out;
  for (const auto& [node, eps] : grouped) out.emplace(node, exact_sum(eps));
  return out;
}

void BudgetLedger::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries()) {
    arr.push_back({{"node", e.node}, {"epsilon", e.epsilon}, {"tag", e.tag}});
  }
  j["entries"] = std::move(arr);
  j["total"] = total();
  j["per_node"] = totals_by_node();
  out << j.dump(2) << '\n';
}

double compose(const BudgetLedger& ledger) { return ledger.total(); }

// ---------------------------------------------------------------------------

std::string_view to_string(PrivacyMode m) noexcept { return m == PrivacyMode::Pdp ? "pdp" : "udp"; }

std::string_view to_string(EpsilonSource s) noexcept {
  switch (s) {
    case EpsilonSource::Distance: return "distance";
    case EpsilonSource::Preference: return "preference";
    case EpsilonSource::Explicit: return "explicit";
  }
  return "explicit";
}

namespace {

void check_in_bounds(const std::string& what, double epsilon, const EpsilonBounds& bounds) {
  check_epsilon(epsilon);
  if (epsilon < bounds.min || epsilon > bounds.max) {
    throw Error(ErrorCode::InvalidBounds, "epsilon for " + what + " outside [" +
                                              std::to_string(bounds.min) + ", " +
                                              std::to_string(bounds.max) + "]");
  }
}

}  // namespace

EpsilonAssignment EpsilonAssignment::uniform(double epsilon, const EpsilonBounds& bounds) {
  bounds.validate();
  check_in_bounds("uniform plan", epsilon, bounds);
  EpsilonAssignment a;
  a.mode_ = PrivacyMode::Udp;
  a.source_ = EpsilonSource::Explicit;
  a.shared_ = epsilon;
  return a;
}

EpsilonAssignment EpsilonAssignment::personalized(std::map<std::string, double> per_node,
                                                  EpsilonSource source, const EpsilonBounds& bounds) {
  bounds.validate();
  for (const auto& [node, eps] : per_node) check_in_bounds("node '" + node + "'", eps, bounds);
  EpsilonAssignment a;
  a.mode_ = PrivacyMode::Pdp;
  a.source_ = source;
  a.per_node_ = std::move(per_node);
  return a;
}

double EpsilonAssignment::epsilon_for(std::string_view node) const {
  if (shared_) return *shared_;
  const auto it = per_node_.find(std::string(node));
  if (it == per_node_.end()) {
    throw Error(ErrorCode::MissingAssignment, "no epsilon assigned to node '" + std::string(node) + "'");
  }
  return it->second;
}

std::vector<SeriesPoint> privatize_series(const std::vector<SeriesPoint>& series,
                                          const EpsilonAssignment& plan, double sensitivity,
                                          BudgetLedger& ledger, std::uint64_t seed, std::string_view tag) {
  check_sensitivity(sensitivity);
  // Resolve every assignment before releasing anything.
  std::vector<double> eps;
  eps.reserve(series.size());
  for (const auto& p : series) eps.push_back(plan.epsilon_for(p.node));

  std::map<std::string, NoiseStream, std::less<>> streams;
  std::vector<SeriesPoint> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& p = series[i];
    auto it = streams.find(p.node);
    if (it == streams.end()) it = streams.emplace(p.node, NoiseStream(seed, p.node)).first;
    out.push_back({p.node, privatize(p.value, sensitivity, eps[i], it->second)});
    ledger.append(p.node, eps[i], std::string(tag));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::map<std::string, double> distance_epsilons(const GridTopology& t, double th_d,
                                                const EpsilonBounds& bounds, std::uint64_t seed) {
  std::vector<double> nearest(t.size(), kUnreachable);
  bool any_cloud = false;
  for (std::size_t c = 0; c < t.size(); ++c) {
    if (t.node(c).tier != Tier::Cloud) continue;
    any_cloud = true;
    const auto d = distances_from(t, c);
    for (std::size_t i = 0; i < t.size(); ++i) nearest[i] = std::min(nearest[i], d[i]);
  }
  if (!any_cloud) throw Error(ErrorCode::InvalidConfig, "topology has no cloud-tier node");

  std::map<std::string, double> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    NoiseStream stream(seed, "epsilon/" + t.node(i).id);
    out.emplace(t.node(i).id, epsilon_from_distance(nearest[i], th_d, bounds, stream));
  }
  return out;
}

std::map<std::string, double> preference_epsilons(const GridTopology& t, const PreferenceWeights& w,
                                                  const EpsilonBounds& bounds) {
  std::map<std::string, double> out;
  for (const auto& n : t.nodes()) {
    out.emplace(n.id, epsilon_from_preference(preference_for(n.tier), w, bounds));
  }
  return out;
}

}  // namespace cpspriv

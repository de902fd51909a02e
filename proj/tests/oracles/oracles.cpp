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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include <Eigen/Dense>
#include <mpfr.h>

namespace oracle {

using cpspriv::GridTopology;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

Matrix floyd_warshall(const GridTopology& t) {
  const std::size_t n = t.size();
  Matrix d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& l : t.links()) {
    const auto a = t.require_index(l.src);
    const auto b = t.require_index(l.dst);
    d[a][b] = std::min(d[a][b], l.weight);
    d[b][a] = std::min(d[b][a], l.weight);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

std::vector<double> brute_betweenness(const GridTopology& t) {
  const std::size_t n = t.size();
  const auto dist = floyd_warshall(t);
  std::vector<double> bc(n, 0.0);

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t target = s + 1; target < n; ++target) {
      if (std::isinf(dist[s][target])) continue;
      const double best = dist[s][target];
      double total = 0.0;
      std::vector<double> through(n, 0.0);
      std::vector<char> on(n, 0);
      std::vector<std::size_t> path{s};
      on[s] = 1;
      // Positive weights: a prefix longer than the optimum cannot recover.
      std::function<void(std::size_t, double)> dfs = [&](std::size_t v, double len) {
        if (len > best && !close(len, best, 1e-12)) return;
        if (v == target) {
          if (close(len, best, 1e-12)) {
            total += 1.0;
            for (std::size_t i = 1; i + 1 < path.size(); ++i) through[path[i]] += 1.0;
          }
          return;
        }
        for (const auto& nb : t.neighbors(v)) {
          if (on[nb.node]) continue;
          on[nb.node] = 1;
          path.push_back(nb.node);
          dfs(nb.node, len + nb.weight);
          path.pop_back();
          on[nb.node] = 0;
        }
      };
      dfs(s, 0.0);
      for (std::size_t v = 0; v < n; ++v) bc[v] += through[v] / total;
    }
  }
  return bc;
}

std::vector<double> dense_eigenvector(const GridTopology& t, double* eigenvalue) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& nb : t.neighbors(i)) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(nb.node)) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  const Eigen::VectorXd v = solver.eigenvectors().col(n - 1);
  if (eigenvalue) *eigenvalue = solver.eigenvalues()(n - 1);
  std::vector<double> out(t.size());
  const double sign = v.sum() < 0 ? -1.0 : 1.0;
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sign * v(i);
  return out;
}

std::vector<double> closeness_from(const GridTopology& t, const Matrix& dist) {
  const std::size_t n = t.size();
  std::vector<double> out(n, 0.0);
  if (n < 2 || t.links().empty()) return out;
  double wmin = kInf;
  for (const auto& l : t.links()) wmin = std::min(wmin, l.weight);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    bool reach_all = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isinf(dist[i][j])) reach_all = false;
      sum += dist[i][j];
    }
    out[i] = reach_all ? static_cast<double>(n - 1) * wmin / sum : 0.0;
  }
  return out;
}

cpspriv::AttackPath brute_best_path(const cpspriv::Vaag& vaag) {
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& e : vaag.edges) succ[e.from].insert(e.to);
  auto risk_of = [&](const std::string& id) {
    const auto* v = vaag.find(id);
    return v ? v->risk : 0.0;
  };

  cpspriv::AttackPath best;
  bool have = false;
  std::vector<std::string> path;
  std::set<std::string> on;
  auto consider = [&] {
    double total = 0.0;
    for (const auto& id : path) total += risk_of(id);
    bool better = !have;
    if (have) {
      if (!close(total, best.cumulative_risk, 1e-9)) better = total > best.cumulative_risk;
      else if (path.size() != best.nodes.size()) better = path.size() > best.nodes.size();
      else better = path < best.nodes;
    }
    if (better) {
      best = {path, total};
      have = true;
    }
  };
  std::function<void(const std::string&)> walk = [&](const std::string& v) {
    if (path.size() >= 2) consider();
    const auto it = succ.find(v);
    if (it == succ.end()) return;
    for (const auto& w : it->second) {
      if (on.count(w)) continue;
      on.insert(w);
      path.push_back(w);
      walk(w);
      path.pop_back();
      on.erase(w);
    }
  };
  for (const auto& [start, unused] : succ) {
    path = {start};
    on = {start};
    walk(start);
  }
  return best;
}

double mpfr_sum(const std::vector<double>& xs) {
  // 2200 bits cover the full double exponent range, so every partial sum is
  // exact and only the final conversion rounds.
  mpfr_t acc;
  mpfr_init2(acc, 2200);
  mpfr_set_zero(acc, 1);
  for (double x : xs) mpfr_add_d(acc, acc, x, MPFR_RNDN);
  const double out = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clear(acc);
  return out;
}

GridTopology random_topology(std::mt19937_64& rng, std::size_t max_nodes, bool connected) {
  static constexpr double kWeights[] = {0.5, 1.0, 1.5, 2.0, 3.0};
  static constexpr cpspriv::Tier kTiers[] = {cpspriv::Tier::Edge, cpspriv::Tier::Fog, cpspriv::Tier::Cloud};
  std::uniform_int_distribution<std::size_t> size_dist(2, max_nodes);
  std::uniform_int_distribution<std::size_t> pick_w(0, 4);
  std::uniform_int_distribution<std::size_t> pick_t(0, 2);
  std::bernoulli_distribution extra(connected ? 0.3 : 0.25);

  const std::size_t n = size_dist(rng);
  std::vector<cpspriv::NodeRecord> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i), kTiers[pick_t(rng)], ""});
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  if (connected) {
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> parent(0, i - 1);
      pairs.emplace(parent(rng), i);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (extra(rng)) pairs.emplace(i, j);
  std::vector<cpspriv::LinkRecord> links;
  for (const auto& [a, b] : pairs) links.push_back({nodes[a].id, nodes[b].id, kWeights[pick_w(rng)]});
  return cpspriv::build_topology(std::move(nodes), links);
}

}  // namespace oracle

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

#include "cpspriv/topology.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <utility>

#include "cpspriv/csv.hpp"
#include "cpspriv/error.hpp"

namespace cpspriv {

std::string_view to_string(Tier tier) noexcept {
  switch (tier) {
    case Tier::Edge: return "edge";
    case Tier::Fog: return "fog";
    case Tier::Cloud: return "cloud";
  }
  return "edge";
}

std::optional<Tier> parse_tier(std::string_view s) {
  std::string lower;
  for (char c : csv::trim(s)) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "edge") return Tier::Edge;
  if (lower == "fog") return Tier::Fog;
  if (lower == "cloud") return Tier::Cloud;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

bool DenseMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if (std::abs((*this)(r, c) - (*this)(c, r)) > tol) return false;
    }
  }
  return true;
}

void DenseMatrix::write_csv(std::ostream& out, const std::vector<std::string>& labels) const {
  const bool labelled = !labels.empty();
  if (labelled) {
    out << "node";
    for (std::size_t c = 0; c < cols_; ++c) out << ',' << labels.at(c);
    out << '\n';
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    if (labelled) out << labels.at(r) << ',';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ',';
      out << csv::format_double((*this)(r, c));
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Construction

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg, std::size_t line) {
  if (line) throw Error(code, msg, line);
  throw Error(code, msg);
}

std::size_t line_at(const std::vector<std::size_t>* lines, std::size_t i) {
  return lines ? lines->at(i) : 0;
}

bool nearly_equal(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

namespace detail {

GridTopology build_topology_checked(std::vector<NodeRecord> nodes,
                                    const std::vector<LinkRecord>& links,
                                    const std::vector<std::size_t>* node_lines,
                                    const std::vector<std::size_t>* link_lines) {
  GridTopology t;
  t.index_.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id.empty()) {
      fail(ErrorCode::MalformedRow, "empty node id", line_at(node_lines, i));
    }
    if (!t.index_.emplace(nodes[i].id, i).second) {
      fail(ErrorCode::DuplicateNodeId, "duplicate node id '" + nodes[i].id + "'",
           line_at(node_lines, i));
    }
  }
  t.nodes_ = std::move(nodes);

  // (lo, hi) -> minimum weight; std::map keeps the canonical link order stable.
  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    const auto line = line_at(link_lines, i);
    const auto a = t.index_.find(l.src);
    const auto b = t.index_.find(l.dst);
    if (a == t.index_.end() || b == t.index_.end()) {
      const auto& missing = a == t.index_.end() ? l.src : l.dst;
      fail(ErrorCode::UnknownEndpoint, "link references unknown node '" + missing + "'", line);
    }
    if (a->second == b->second) {
      fail(ErrorCode::SelfLoop, "self-loop on node '" + l.src + "'", line);
    }
    if (!(l.weight > 0.0) || !std::isfinite(l.weight)) {
      fail(ErrorCode::NonPositiveWeight,
           "link " + l.src + "-" + l.dst + " has non-positive weight " + csv::format_double(l.weight),
           line);
    }
    const auto key = std::minmax(a->second, b->second);
    auto [it, inserted] = merged.emplace(key, l.weight);
    if (!inserted) it->second = std::min(it->second, l.weight);
  }

  t.adjacency_.assign(t.nodes_.size(), {});
  t.links_.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    t.links_.push_back({t.nodes_[key.first].id, t.nodes_[key.second].id, w});
    t.adjacency_[key.first].push_back({key.second, w});
    t.adjacency_[key.second].push_back({key.first, w});
  }
  return t;
}

}  // namespace detail

std::optional<std::size_t> GridTopology::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GridTopology::require_index(std::string_view id) const {
  if (auto i = index_of(id)) return *i;
  throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(id) + "'");
}

GridTopology build_topology(std::vector<NodeRecord> nodes, const std::vector<LinkRecord>& links) {
  return detail::build_topology_checked(std::move(nodes), links, nullptr, nullptr);
}

GridTopology load_topology(std::istream& in) {
  enum class Section { None, Nodes, Links } section = Section::None;
  std::vector<NodeRecord> nodes;
  std::vector<LinkRecord> links;
  std::vector<std::size_t> node_lines;
  std::vector<std::size_t> link_lines;

  const auto lines = csv::read_lines(in);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const auto text = csv::trim(lines[n]);
    if (csv::is_skippable(text)) continue;
    if (text == "[nodes]") {
      section = Section::Nodes;
      continue;
    }
    if (text == "[links]") {
      section = Section::Links;
      continue;
    }
    const auto fields = csv::split(text);
    switch (section) {
      case Section::None:
        throw Error(ErrorCode::MalformedRow, "row outside of a [nodes] or [links] section", line_no);
      case Section::Nodes: {
        if (fields.size() < 2 || fields.size() > 3) {
          throw Error(ErrorCode::MalformedRow, "expected id,tier[,label]", line_no);
        }
        const auto tier = parse_tier(fields[1]);
        if (!tier) {
          throw Error(ErrorCode::MalformedRow, "unknown tier '" + fields[1] + "'", line_no);
        }
        nodes.push_back({fields[0], *tier, fields.size() == 3 ? fields[2] : std::string{}});
        node_lines.push_back(line_no);
        break;
      }
      case Section::Links: {
        if (fields.size() != 3) {
          throw Error(ErrorCode::MalformedRow, "expected src,dst,weight", line_no);
        }
        const auto w = csv::parse_double(fields[2]);
        if (!w) throw Error(ErrorCode::MalformedRow, "bad weight '" + fields[2] + "'", line_no);
        links.push_back({fields[0], fields[1], *w});
        link_lines.push_back(line_no);
        break;
      }
    }
  }
  if (nodes.empty()) throw Error(ErrorCode::MalformedRow, "topology has no nodes");
  return detail::build_topology_checked(std::move(nodes), links, &node_lines, &link_lines);
}

GridTopology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open topology file '" + path + "'");
  return load_topology(in);
}

// ---------------------------------------------------------------------------
// Matrices

DenseMatrix adjacency_matrix(const GridTopology& t) {
  DenseMatrix a(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (const auto& nb : t.neighbors(i)) a(i, nb.node) = 1.0;
  }
  return a;
}

DenseMatrix laplacian_matrix(const GridTopology& t) {
  DenseMatrix l(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (const auto& nb : t.neighbors(i)) l(i, nb.node) = -1.0;
    l(i, i) = static_cast<double>(t.neighbors(i).size());
  }
  return l;
}

// ---------------------------------------------------------------------------
// Shortest paths

std::vector<double> distances_from(const GridTopology& t, std::size_t src) {
  std::vector<double> dist(t.size(), kUnreachable);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist.at(src) = 0.0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (const auto& nb : t.neighbors(v)) {
      const double alt = d + nb.weight;
      if (alt < dist[nb.node]) {
        dist[nb.node] = alt;
        pq.emplace(alt, nb.node);
      }
    }
  }
  return dist;
}

double shortest_distance(const GridTopology& t, std::string_view src, std::string_view dst) {
  const auto s = t.require_index(src);
  const auto d = t.require_index(dst);
  if (s == d) return 0.0;
  return distances_from(t, s)[d];
}

DenseMatrix distance_matrix(const GridTopology& t) {
  DenseMatrix m(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto row = distances_from(t, i);
    for (std::size_t j = 0; j < t.size(); ++j) m(i, j) = row[j];
  }
  return m;
}

double diameter(const GridTopology& t) {
  const auto m = distance_matrix(t);
  return *std::max_element(m.data().begin(), m.data().end());
}

double max_finite_distance(const GridTopology& t) {
  const auto m = distance_matrix(t);
  double best = 0.0;
  for (double d : m.data()) {
    if (std::isfinite(d)) best = std::max(best, d);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Centrality

std::vector<double> eigenvector_centrality(const GridTopology& t, const EigenOptions& opts,
                                           double* eigenvalue, std::size_t* iterations) {
  const std::size_t n = t.size();
  auto normalize = [](std::vector<double>& v) {
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= norm;
  };

  // Iterating on A + I keeps the eigenvectors of A but removes the +/-lambda
  // tie of bipartite graphs (stars, paths) that stalls plain power iteration.
  std::vector<double> x(n, 1.0);
  normalize(x);
  std::vector<double> y(n);
  std::size_t iter = 0;
  bool converged = false;
  while (iter < opts.max_iterations) {
    ++iter;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = x[i];
      for (const auto& nb : t.neighbors(i)) acc += x[nb.node];
      y[i] = acc;
    }
    normalize(y);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(y[i] - x[i]));
    x.swap(y);
    if (diff < opts.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::EigenvectorNoConvergence,
                "eigenvector centrality did not converge in " +
                    std::to_string(opts.max_iterations) + " iterations");
  }
  if (eigenvalue) {
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& nb : t.neighbors(i)) lambda += x[i] * x[nb.node];
    }
    *eigenvalue = lambda;
  }
  if (iterations) *iterations = iter;
  return x;
}

std::vector<double> betweenness_centrality(const GridTopology& t) {
  const std::size_t n = t.size();
  std::vector<double> bc(n, 0.0);
  using Item = std::pair<double, std::size_t>;

  std::vector<double> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<std::size_t> order;
  std::vector<char> settled(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(settled.begin(), settled.end(), 0);
    for (auto& p : preds) p.clear();
    order.clear();

    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    sigma[s] = 1.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      const auto [d, v] = pq.top();
      pq.pop();
      if (settled[v] || d > dist[v]) continue;
      settled[v] = 1;
      order.push_back(v);
      for (const auto& nb : t.neighbors(v)) {
        const auto w = nb.node;
        if (settled[w]) continue;
        const double alt = dist[v] + nb.weight;
        if (nearly_equal(alt, dist[w])) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        } else if (alt < dist[w]) {
          dist[w] = alt;
          sigma[w] = sigma[v];
          preds[w].assign(1, v);
          pq.emplace(alt, w);
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (const auto v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  // Every unordered pair was accumulated from both endpoints.
  for (double& b : bc) b /= 2.0;
  return bc;
}

std::vector<double> closeness_centrality(const GridTopology& t) {
  const std::size_t n = t.size();
  std::vector<double> out(n, 0.0);
  if (n < 2 || t.links().empty()) return out;
  double w_min = kUnreachable;
  for (const auto& l : t.links()) w_min = std::min(w_min, l.weight);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = distances_from(t, i);
    double total = 0.0;
    bool reachable = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(d[j])) {
        reachable = false;
        break;
      }
      total += d[j];
    }
    if (reachable) out[i] = static_cast<double>(n - 1) * w_min / total;
  }
  return out;
}

CentralityScores centrality_scores(const GridTopology& t, const EigenOptions& opts) {
  CentralityScores c;
  c.degree.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    c.degree.push_back(static_cast<double>(t.neighbors(i).size()));
  }
  c.eigenvector = eigenvector_centrality(t, opts, &c.dominant_eigenvalue, &c.eigen_iterations);
  c.betweenness = betweenness_centrality(t);
  c.closeness = closeness_centrality(t);
  return c;
}

std::vector<std::size_t> rank_by_score(const GridTopology& t, const std::vector<double>& score) {
  std::vector<std::size_t> idx(t.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (score.at(a) != score.at(b)) return score.at(a) > score.at(b);
    return t.node(a).id < t.node(b).id;
  });
  return idx;
}

}  // namespace cpspriv

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
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cpspriv {

enum class Tier { Edge, Fog, Cloud };

std::string_view to_string(Tier tier) noexcept;
std::optional<Tier> parse_tier(std::string_view s);

struct NodeRecord {
  std::string id;
  Tier tier = Tier::Edge;
  std::string label;
};

struct LinkRecord {
  std::string src;
  std::string dst;
  double weight = 1.0;
};

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const noexcept { return data_; }

  bool is_symmetric(double tol = 0.0) const;

  /// One row per matrix row; `labels`, when non-empty, adds a header row and
  /// a leading label column.
  void write_csv(std::ostream& out, const std::vector<std::string>& labels = {}) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

class GridTopology;

namespace detail {
// Validating builder shared by build_topology() and the file loader; the
// optional line vectors map each input row to its source line for errors.
GridTopology build_topology_checked(std::vector<NodeRecord> nodes,
                                    const std::vector<LinkRecord>& links,
                                    const std::vector<std::size_t>* node_lines,
                                    const std::vector<std::size_t>* link_lines);
}  // namespace detail

struct Neighbor {
  std::size_t node;
  double weight;
};

/// Undirected weighted grid graph. Construct through build_topology() or
/// load_topology(); instances are immutable afterwards.
class GridTopology {
 public:
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }
  /// Canonical links: one per unordered pair, src index < dst index.
  const std::vector<LinkRecord>& links() const noexcept { return links_; }
  const std::vector<Neighbor>& neighbors(std::size_t i) const { return adjacency_.at(i); }

  std::optional<std::size_t> index_of(std::string_view id) const;
  /// Throws Error{UnknownNode}.
  std::size_t require_index(std::string_view id) const;
  const NodeRecord& node(std::size_t i) const { return nodes_.at(i); }

  friend GridTopology detail::build_topology_checked(std::vector<NodeRecord> nodes,
                                                     const std::vector<LinkRecord>& links,
                                                     const std::vector<std::size_t>* node_lines,
                                                     const std::vector<std::size_t>* link_lines);

 private:
  GridTopology() = default;

  std::vector<NodeRecord> nodes_;
  std::vector<LinkRecord> links_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Validates and assembles a topology. Parallel links between the same pair
/// collapse into one carrying the minimum weight.
/// Throws Error{DuplicateNodeId | UnknownEndpoint | NonPositiveWeight | SelfLoop}.
GridTopology build_topology(std::vector<NodeRecord> nodes, const std::vector<LinkRecord>& links);

/// Reads the sectioned text format:
///
///   [nodes]
///   id,tier,label
///   [links]
///   src,dst,weight
///
/// '#' starts a comment line. Rows are validated with line numbers.
GridTopology load_topology(std::istream& in);
GridTopology load_topology_file(const std::string& path);

DenseMatrix adjacency_matrix(const GridTopology& t);
DenseMatrix laplacian_matrix(const GridTopology& t);

struct CentralityScores {
  std::vector<double> degree;
  std::vector<double> eigenvector;
  std::vector<double> betweenness;
  std::vector<double> closeness;
  /// Rayleigh quotient of the converged eigenvector against the adjacency.
  double dominant_eigenvalue = 0.0;
  std::size_t eigen_iterations = 0;
};

struct EigenOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 1000;
};

/// Eigenvector centrality of the unweighted adjacency, unit Euclidean norm.
/// Throws Error{EigenvectorNoConvergence}.
std::vector<double> eigenvector_centrality(const GridTopology& t, const EigenOptions& opts = {},
                                           double* eigenvalue = nullptr,
                                           std::size_t* iterations = nullptr);

/// Weighted shortest-path betweenness, each unordered pair counted once.
std::vector<double> betweenness_centrality(const GridTopology& t);

/// (N-1) * w_min / sum of distances, so the score lies in [0, 1] and is
/// invariant under uniform scaling of the weights. 0 when any node is
/// unreachable or N == 1.
std::vector<double> closeness_centrality(const GridTopology& t);

CentralityScores centrality_scores(const GridTopology& t, const EigenOptions& opts = {});

/// Dijkstra from one source over all nodes; kUnreachable where disconnected.
std::vector<double> distances_from(const GridTopology& t, std::size_t src);

/// Least total link weight between two nodes, or kUnreachable.
/// Throws Error{UnknownNode}.
double shortest_distance(const GridTopology& t, std::string_view src, std::string_view dst);

/// All-pairs distances by repeated Dijkstra.
DenseMatrix distance_matrix(const GridTopology& t);

/// Largest shortest distance, kUnreachable when the graph is disconnected.
double diameter(const GridTopology& t);

/// Largest finite shortest distance (0 for a graph without links).
double max_finite_distance(const GridTopology& t);

/// Node indices sorted by descending score, ties by ascending node id.
std::vector<std::size_t> rank_by_score(const GridTopology& t, const std::vector<double>& score);

}  // namespace cpspriv

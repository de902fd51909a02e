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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "cpspriv/error.hpp"
#include "cpspriv/topology.hpp"
#include "oracles.hpp"

using namespace cpspriv;

namespace {

GridTopology parse(const std::string& text) {
  std::istringstream in(text);
  return load_topology(in);
}

ErrorCode code_of(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (line) *line = e.line();
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

GridTopology star() {
  return parse("[nodes]\nh,fog\na,edge\nb,edge\nc,edge\nd,edge\n[links]\nh,a,1\nh,b,1\nh,c,1\nh,d,1\n");
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

TEST_CASE("two-node topology") {
  const auto t = load_topology_file(CPSPRIV_FIXTURE_DIR "/two_node.txt");
  CHECK(t.size() == 2);
  CHECK(t.links().size() == 1);
  CHECK(diameter(t) == 2.5);
  CHECK(shortest_distance(t, "a", "b") == 2.5);
  CHECK(shortest_distance(t, "a", "a") == 0.0);
  // (N-1) * w_min / sum(d) = 1 * 2.5 / 2.5
  CHECK(closeness_centrality(t) == std::vector<double>{1.0, 1.0});
  CHECK(betweenness_centrality(t) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("loader validates rows with line numbers") {
  std::size_t line = 0;
  CHECK(code_of("[nodes]\na,edge\na,fog\n", &line) == ErrorCode::DuplicateNodeId);
  CHECK(line == 3);
  CHECK(code_of("[nodes]\na,edge\n[links]\na,z,1\n", &line) == ErrorCode::UnknownEndpoint);
  CHECK(line == 4);
  CHECK(code_of("[nodes]\na,edge\n[links]\na,a,1\n") == ErrorCode::SelfLoop);
  CHECK(code_of("[nodes]\na,edge\nb,edge\n[links]\na,b,0\n") == ErrorCode::NonPositiveWeight);
  CHECK(code_of("[nodes]\na,edge\nb,edge\n[links]\na,b,-2\n") == ErrorCode::NonPositiveWeight);
  CHECK(code_of("[nodes]\na,planet\n", &line) == ErrorCode::MalformedRow);
  CHECK(line == 2);
  CHECK(code_of("a,edge\n") == ErrorCode::MalformedRow);
  CHECK_THROWS_AS(load_topology_file(CPSPRIV_FIXTURE_DIR "/does_not_exist.txt"), Error);
}

TEST_CASE("tiers parse case-insensitively") {
  CHECK(parse_tier("Cloud") == Tier::Cloud);
  CHECK(parse_tier(" FOG ") == Tier::Fog);
  CHECK_FALSE(parse_tier("core"));
  CHECK(to_string(Tier::Edge) == "edge");
}

TEST_CASE("parallel links collapse to the lightest") {
  const auto t = parse("[nodes]\na,edge\nb,fog\n[links]\na,b,3\nb,a,1.5\n");
  CHECK(t.links().size() == 1);
  CHECK(t.links()[0].weight == 1.5);
  CHECK(shortest_distance(t, "b", "a") == 1.5);
}

TEST_CASE("adjacency and Laplacian") {
  const auto t = star();
  const auto a = adjacency_matrix(t);
  const auto l = laplacian_matrix(t);
  CHECK(a.is_symmetric());
  CHECK(l.is_symmetric());
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 2) == 0.0);
  CHECK(l(0, 0) == 4.0);
  CHECK(l(1, 1) == 1.0);
  for (std::size_t i = 0; i < l.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < l.cols(); ++j) row += l(i, j);
    CHECK(row == 0.0);
  }
  std::ostringstream csv;
  a.write_csv(csv, {"h", "a", "b", "c", "d"});
  CHECK(csv.str().rfind("node,h,a,b,c,d\nh,0,1,1,1,1\n", 0) == 0);
}

TEST_CASE("star hub dominates every centrality") {
  const auto t = star();
  const auto s = centrality_scores(t);
  for (const auto* v : {&s.degree, &s.eigenvector, &s.betweenness, &s.closeness}) {
    CHECK(argmax(*v) == 0);
    for (std::size_t i = 1; i < v->size(); ++i) CHECK((*v)[0] > (*v)[i]);
  }
  // Hub lies on all C(4,2) = 6 leaf pairs; star eigenvalue is sqrt(4) = 2.
  CHECK(s.betweenness[0] == doctest::Approx(6.0));
  CHECK(s.dominant_eigenvalue == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s.eigenvector[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
}

TEST_CASE("disconnected topology") {
  const auto t = load_topology_file(CPSPRIV_FIXTURE_DIR "/disconnected.txt");
  CHECK(std::isinf(diameter(t)));
  CHECK(max_finite_distance(t) == 1.0);
  CHECK(std::isinf(shortest_distance(t, "a", "c")));
  CHECK(closeness_centrality(t) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(shortest_distance(t, "a", "zz"), Error);
}

TEST_CASE("eigenvector iteration cap raises") {
  const auto t = parse("[nodes]\na,edge\nb,edge\nc,edge\n[links]\na,b,1\nb,c,1\n");
  EigenOptions opts;
  opts.max_iterations = 1;
  try {
    eigenvector_centrality(t, opts);
    FAIL("expected non-convergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EigenvectorNoConvergence);
  }
}

TEST_CASE("six-node weighted graph matches the oracles") {
  // Two shortest a->f routes of equal length 3 share the load.
  const auto t = parse(
      "[nodes]\na,edge\nb,edge\nc,fog\nd,fog\ne,fog\nf,cloud\n"
      "[links]\na,b,1\na,c,1\nb,d,1\nc,d,1\nd,f,1\nc,e,2\ne,f,1\nb,e,3\n");
  const auto fw = oracle::floyd_warshall(t);
  const auto dm = distance_matrix(t);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) CHECK(dm(i, j) == doctest::Approx(fw[i][j]));

  const auto bc = betweenness_centrality(t);
  const auto bo = oracle::brute_betweenness(t);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(bc[i] == doctest::Approx(bo[i]).epsilon(1e-9));

  double lambda_ref = 0.0;
  const auto ev_ref = oracle::dense_eigenvector(t, &lambda_ref);
  double lambda = 0.0;
  const auto ev = eigenvector_centrality(t, {}, &lambda);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(ev[i] - ev_ref[i]) <= 1e-6);
  CHECK(std::abs(lambda - lambda_ref) <= 1e-6);

  const auto cl = closeness_centrality(t);
  const auto co = oracle::closeness_from(t, fw);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(cl[i] == doctest::Approx(co[i]));
}

TEST_CASE("eigenvector residual is small") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto t = oracle::random_topology(rng, 12, true);
    double lambda = 0.0;
    const auto v = eigenvector_centrality(t, {}, &lambda);
    const auto a = adjacency_matrix(t);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < t.size(); ++j) av += a(i, j) * v[j];
      norm2 += (av - lambda * v[i]) * (av - lambda * v[i]);
    }
    CHECK(std::sqrt(norm2) <= 1e-6);
  }
}

TEST_CASE("centrality argmax survives uniform weight scaling") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto t = oracle::random_topology(rng, 9, true);
    std::vector<NodeRecord> nodes = t.nodes();
    std::vector<LinkRecord> links = t.links();
    for (auto& l : links) l.weight *= 3.0;
    const auto scaled = build_topology(nodes, links);
    const auto a = centrality_scores(t);
    const auto b = centrality_scores(scaled);
    CHECK(a.degree == b.degree);
    CHECK(a.eigenvector == b.eigenvector);
    CHECK(rank_by_score(t, a.betweenness) == rank_by_score(scaled, b.betweenness));
    CHECK(rank_by_score(t, a.closeness) == rank_by_score(scaled, b.closeness));
  }
}

TEST_CASE("ranking breaks ties by node id") {
  const auto t = parse("[nodes]\nz,edge\ny,edge\nx,edge\n");
  CHECK(rank_by_score(t, {1.0, 2.0, 1.0}) == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("30-node fixture matches the committed golden") {
  const auto t = load_topology_file(CPSPRIV_FIXTURE_DIR "/grid30/topology.txt");
  const auto s = centrality_scores(t);
  std::ifstream golden(CPSPRIV_FIXTURE_DIR "/grid30/centrality_golden.csv");
  std::string line;
  std::getline(golden, line);
  std::size_t i = 0;
  while (std::getline(golden, line)) {
    std::istringstream row(line);
    std::string id, tier, deg, eig, btw, clo;
    std::getline(row, id, ',');
    std::getline(row, tier, ',');
    std::getline(row, deg, ',');
    std::getline(row, eig, ',');
    std::getline(row, btw, ',');
    std::getline(row, clo, ',');
    REQUIRE(i < t.size());
    CHECK(t.node(i).id == id);
    CHECK(s.degree[i] == std::stod(deg));
    CHECK(s.eigenvector[i] == doctest::Approx(std::stod(eig)).epsilon(1e-9));
    CHECK(s.betweenness[i] == doctest::Approx(std::stod(btw)).epsilon(1e-9));
    CHECK(s.closeness[i] == doctest::Approx(std::stod(clo)).epsilon(1e-9));
    ++i;
  }
  CHECK(i == 30);
}

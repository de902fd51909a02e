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

#include <compare>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cpspriv/topology.hpp"

namespace cpspriv {

using ConditionSet = std::set<std::string>;

/// A past attack: when every precondition is available the target node is
/// compromised and gains the consequence conditions.
struct AttackIncident {
  std::string id;
  ConditionSet preconditions;
  ConditionSet consequences;
  std::string target;
};

/// Known vulnerability information for one node, with the privacy risk
/// factors (loss magnitude and loss event frequency) and the four
/// classification tags.
struct VulnerabilityRecord {
  std::string node;
  ConditionSet conditions;
  double plm = 0.0;
  double fple = 0.0;
  std::string risk_source;
  std::string privacy_weakness;
  std::string feared_event;
  std::string privacy_harm;
};

/// Directed attack step from a condition holder to a compromised node,
/// labelled with the incident (action) that produced it.
struct AttackEdge {
  std::string from;
  std::string to;
  std::string action;

  auto operator<=>(const AttackEdge&) const = default;
};

/// Ordered vulnerability dependency v_from -> v_to (condition ids).
struct Dependency {
  std::string from;
  std::string to;

  auto operator<=>(const Dependency&) const = default;
};

struct ProfileResult {
  /// Compromised nodes in order of compromise.
  std::vector<std::string> compromised;
  std::vector<AttackEdge> edges;
  /// Conditions that enabled each edge (the per-edge compromised set).
  std::map<AttackEdge, ConditionSet> enabling;
  /// Input records plus acquired consequences, input order preserved; nodes
  /// without a record that acquired conditions are appended.
  std::vector<VulnerabilityRecord> vulnerabilities;
  /// Incident ids matched to each compromised node.
  std::map<std::string, std::vector<std::string>> matches;
};

/// Traverses the incidents to a fixpoint, compromising targets from
/// `new_nodes` whose preconditions are available.
///
/// A precondition is available when the target itself holds it, or when it
/// is held by a foothold: a node outside `new_nodes`, or a node that has
/// already been compromised. Edges run from footholds to the target and only
/// from nodes compromised earlier than the target (or never targeted), so
/// the edge set is acyclic by construction. An empty incident list returns
/// the input unchanged.
///
/// Throws Error{UnknownNode} for a target that has neither a record nor
/// appears in `new_nodes`, Error{UnknownCondition} for a precondition that no
/// record holds and no incident produces, Error{MalformedRow} for an incident
/// with an empty precondition or consequence set.
ProfileResult generate_vulnerability_profile(const std::vector<VulnerabilityRecord>& vulnerabilities,
                                             const std::vector<AttackIncident>& incidents,
                                             const std::set<std::string>& new_nodes);

/// Throws Error{NegativeInput}.
double risk_score(double plm, double fple);

struct VaagNode {
  std::string id;
  bool start = false;     // attack path entry point (no incoming attack edge)
  bool attacked = false;  // compromised
  bool on_path = false;   // incident to at least one attack edge
  double plm = 0.0;
  double fple = 0.0;
  double risk = 0.0;
};

/// The vulnerability assessment attack graph.
struct Vaag {
  std::vector<VaagNode> nodes;  // topology order
  std::vector<AttackEdge> edges;
  /// Physical connectivity: the topology's links as (node, node) pairs.
  std::vector<std::pair<std::string, std::string>> physical;
  std::map<AttackEdge, ConditionSet> mapping;
  std::vector<Dependency> dependencies;
  ProfileResult profile;

  const VaagNode* find(const std::string& id) const;
};

/// Assembles the attack graph. Incident targets are the nodes under
/// investigation; every other node with a record is a foothold. Risk is
/// plm * fple for compromised nodes and 0 elsewhere.
///
/// Throws Error{UnknownNode} for records or targets outside the topology,
/// Error{UnknownCondition} for dependencies on conditions nobody holds,
/// Error{CyclicAttackGraph} when the dependencies form a cycle, plus anything
/// generate_vulnerability_profile() throws.
Vaag build_vaag(const GridTopology& topology, const std::vector<VulnerabilityRecord>& vulnerabilities,
                const std::vector<AttackIncident>& incidents,
                const std::vector<Dependency>& dependencies = {});

struct SvplEntry {
  std::string node;
  double risk = 0.0;
  double plm = 0.0;
  double fple = 0.0;
};

/// All nodes, descending by risk, ties by ascending node id.
std::vector<SvplEntry> rank_svpl(const Vaag& vaag);

struct AttackPath {
  std::vector<std::string> nodes;
  double cumulative_risk = 0.0;
};

/// The attack path (at least one edge) with maximal cumulative risk over the
/// attack DAG. Ties prefer the longer path, then the lexicographically
/// smaller node sequence. Empty when there are no edges.
/// Throws Error{CyclicAttackGraph}.
AttackPath best_attack_profile(const Vaag& vaag);

// File formats. Every file starts with its fixed header row; list-valued
// fields separate items with ';'.
//   incidents:       id,target,preconditions,consequences
//   vulnerabilities: node,conditions,plm,fple,risk_source,privacy_weakness,feared_event,privacy_harm
//   dependencies:    from,to
std::vector<AttackIncident> load_incidents(std::istream& in);
std::vector<VulnerabilityRecord> load_vulnerabilities(std::istream& in);
std::vector<Dependency> load_dependencies(std::istream& in);

void write_svpl_csv(std::ostream& out, const std::vector<SvplEntry>& ranking);

}  // namespace cpspriv

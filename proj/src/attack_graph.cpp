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

#include "cpspriv/attack_graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_map>

#include "cpspriv/csv.hpp"
#include "cpspriv/error.hpp"

namespace cpspriv {

namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

void validate_incident(const AttackIncident& ai) {
  if (ai.preconditions.empty() || ai.consequences.empty()) {
    throw Error(ErrorCode::MalformedRow,
                "incident '" + ai.id + "' needs non-empty preconditions and consequences");
  }
}

}  // namespace

ProfileResult generate_vulnerability_profile(const std::vector<VulnerabilityRecord>& vulnerabilities,
                                             const std::vector<AttackIncident>& incidents,
                                             const std::set<std::string>& new_nodes) {
  ProfileResult out;
  out.vulnerabilities = vulnerabilities;
  if (incidents.empty()) return out;

  std::unordered_map<std::string, std::size_t> record_of;
  ConditionSet universe;
  for (std::size_t i = 0; i < vulnerabilities.size(); ++i) {
    record_of.emplace(vulnerabilities[i].node, i);
    universe.insert(vulnerabilities[i].conditions.begin(), vulnerabilities[i].conditions.end());
  }
  for (const auto& ai : incidents) {
    validate_incident(ai);
    universe.insert(ai.consequences.begin(), ai.consequences.end());
  }
  for (const auto& ai : incidents) {
    if (!record_of.count(ai.target) && !new_nodes.count(ai.target)) {
      throw Error(ErrorCode::UnknownNode,
                  "incident '" + ai.id + "' targets unknown node '" + ai.target + "'");
    }
    for (const auto& p : ai.preconditions) {
      if (!universe.count(p)) {
        throw Error(ErrorCode::UnknownCondition,
                    "incident '" + ai.id + "' requires unknown condition '" + p + "'");
      }
    }
  }

  auto& recs = out.vulnerabilities;
  // 0 for footholds that are never targeted, k >= 1 for the k-th compromise.
  std::unordered_map<std::string, std::size_t> rank;
  auto compromised = [&](const std::string& n) { return rank.count(n) > 0; };
  auto eligible = [&](const std::string& n) { return !new_nodes.count(n) || compromised(n); };
  auto rank_of = [&](const std::string& n) { return compromised(n) ? rank.at(n) : std::size_t{0}; };

  auto holds = [&](const std::string& node, const std::string& cond) {
    const auto it = record_of.find(node);
    return it != record_of.end() && recs[it->second].conditions.count(cond) > 0;
  };
  auto available_elsewhere = [&](const std::string& target, const std::string& cond) {
    for (const auto& r : recs) {
      if (r.node != target && eligible(r.node) && r.conditions.count(cond)) return true;
    }
    return false;
  };

  std::map<AttackEdge, std::size_t> edge_index;
  std::vector<bool> fired(incidents.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < incidents.size(); ++i) {
      if (fired[i]) continue;
      const auto& ai = incidents[i];
      if (!new_nodes.count(ai.target)) continue;
      const bool ready = std::all_of(ai.preconditions.begin(), ai.preconditions.end(),
                                     [&](const std::string& p) {
                                       return holds(ai.target, p) || available_elsewhere(ai.target, p);
                                     });
      if (!ready) continue;

      fired[i] = true;
      changed = true;
      if (!compromised(ai.target)) {
        out.compromised.push_back(ai.target);
        rank[ai.target] = out.compromised.size();
      }
      const auto target_rank = rank.at(ai.target);

      for (const auto& p : ai.preconditions) {
        for (const auto& r : recs) {
          if (r.node == ai.target || !eligible(r.node) || !r.conditions.count(p)) continue;
          if (rank_of(r.node) >= target_rank) continue;
          AttackEdge e{r.node, ai.target, ai.id};
          if (edge_index.emplace(e, out.edges.size()).second) out.edges.push_back(e);
          out.enabling[e].insert(p);
        }
      }

      auto rec = record_of.find(ai.target);
      if (rec == record_of.end()) {
        VulnerabilityRecord fresh;
        fresh.node = ai.target;
        recs.push_back(std::move(fresh));
        rec = record_of.emplace(ai.target, recs.size() - 1).first;
      }
      for (const auto& c : ai.consequences) recs[rec->second].conditions.insert(c);
    }
  }

  // Match every compromised node against the incident set.
  for (const auto& node : out.compromised) {
    auto& matched = out.matches[node];
    for (std::size_t i = 0; i < incidents.size(); ++i) {
      if (fired[i] && incidents[i].target == node) matched.push_back(incidents[i].id);
    }
  }
  return out;
}

double risk_score(double plm, double fple) {
  if (!(plm >= 0.0) || !(fple >= 0.0)) {
    throw Error(ErrorCode::NegativeInput, "plm and fple must be non-negative");
  }
  return plm * fple;
}

const VaagNode* Vaag::find(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

namespace {

// Kahn's algorithm over the dependency digraph; returns true when acyclic.
bool dependencies_acyclic(const std::vector<Dependency>& deps) {
  std::map<std::string, std::vector<std::string>> succ;
  std::map<std::string, std::size_t> indeg;
  for (const auto& d : deps) {
    succ[d.from].push_back(d.to);
    indeg[d.from];
    ++indeg[d.to];
  }
  std::vector<std::string> ready;
  for (const auto& [k, v] : indeg) {
    if (v == 0) ready.push_back(k);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto n = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& m : succ[n]) {
      if (--indeg[m] == 0) ready.push_back(m);
    }
  }
  return seen == indeg.size();
}

}  // namespace

Vaag build_vaag(const GridTopology& topology, const std::vector<VulnerabilityRecord>& vulnerabilities,
                const std::vector<AttackIncident>& incidents,
                const std::vector<Dependency>& dependencies) {
  std::set<std::string> seen;
  for (const auto& r : vulnerabilities) {
    topology.require_index(r.node);
    if (!seen.insert(r.node).second) {
      throw Error(ErrorCode::DuplicateKey, "duplicate vulnerability record for '" + r.node + "'");
    }
    risk_score(r.plm, r.fple);
  }
  std::set<std::string> targets;
  for (const auto& ai : incidents) {
    topology.require_index(ai.target);
    targets.insert(ai.target);
  }

  Vaag g;
  g.profile = generate_vulnerability_profile(vulnerabilities, incidents, targets);
  g.edges = g.profile.edges;
  g.mapping = g.profile.enabling;

  ConditionSet held;
  for (const auto& r : g.profile.vulnerabilities) held.insert(r.conditions.begin(), r.conditions.end());
  for (const auto& d : dependencies) {
    for (const auto* c : {&d.from, &d.to}) {
      if (!held.count(*c)) {
        throw Error(ErrorCode::UnknownCondition, "dependency references unknown condition '" + *c + "'");
      }
    }
  }
  if (!dependencies_acyclic(dependencies)) {
    throw Error(ErrorCode::CyclicAttackGraph, "vulnerability dependencies form a cycle");
  }
  g.dependencies = dependencies;

  for (const auto& l : topology.links()) g.physical.emplace_back(l.src, l.dst);

  std::unordered_map<std::string, const VulnerabilityRecord*> rec;
  for (const auto& r : g.profile.vulnerabilities) rec.emplace(r.node, &r);
  const std::set<std::string> attacked(g.profile.compromised.begin(), g.profile.compromised.end());
  std::set<std::string> has_in;
  std::set<std::string> on_path;
  for (const auto& e : g.edges) {
    has_in.insert(e.to);
    on_path.insert(e.from);
    on_path.insert(e.to);
  }

  g.nodes.reserve(topology.size());
  for (const auto& n : topology.nodes()) {
    VaagNode v;
    v.id = n.id;
    v.attacked = attacked.count(n.id) > 0;
    v.on_path = on_path.count(n.id) > 0;
    v.start = v.on_path && !has_in.count(n.id);
    if (const auto it = rec.find(n.id); it != rec.end()) {
      v.plm = it->second->plm;
      v.fple = it->second->fple;
    }
    v.risk = v.attacked ? risk_score(v.plm, v.fple) : 0.0;
    g.nodes.push_back(std::move(v));
  }
  return g;
}

std::vector<SvplEntry> rank_svpl(const Vaag& vaag) {
  std::vector<SvplEntry> out;
  out.reserve(vaag.nodes.size());
  for (const auto& n : vaag.nodes) out.push_back({n.id, n.risk, n.plm, n.fple});
  std::sort(out.begin(), out.end(), [](const SvplEntry& a, const SvplEntry& b) {
    if (a.risk != b.risk) return a.risk > b.risk;
    return a.node < b.node;
  });
  return out;
}

AttackPath best_attack_profile(const Vaag& vaag) {
  if (vaag.edges.empty()) return {};

  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const std::string& id) {
    const auto [it, inserted] = index.emplace(id, ids.size());
    if (inserted) ids.push_back(id);
    return it->second;
  };
  std::set<std::pair<std::size_t, std::size_t>> arcs;
  for (const auto& e : vaag.edges) arcs.emplace(intern(e.from), intern(e.to));

  const std::size_t n = ids.size();
  std::vector<double> risk(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto* v = vaag.find(ids[i])) risk[i] = v->risk;
  }
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [a, b] : arcs) {
    succ[a].push_back(b);
    ++indeg[b];
  }

  std::vector<std::size_t> topo;
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    topo.push_back(v);
    for (const auto w : succ[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  if (topo.size() != n) throw Error(ErrorCode::CyclicAttackGraph, "attack edges form a cycle");

  // Best path starting at each node, filled in reverse topological order.
  struct Best {
    double total = 0.0;
    std::size_t length = 1;
    std::optional<std::size_t> next;
  };
  std::vector<Best> best(n);
  auto sequence = [&](std::size_t v) {
    std::vector<std::string> seq{ids[v]};
    for (auto cur = best[v].next; cur; cur = best[*cur].next) seq.push_back(ids[*cur]);
    return seq;
  };
  // True when path a (starting at node a) beats path b (starting at node b).
  auto better = [&](std::size_t a, std::size_t b) {
    if (!nearly_equal(best[a].total, best[b].total)) return best[a].total > best[b].total;
    if (best[a].length != best[b].length) return best[a].length > best[b].length;
    return sequence(a) < sequence(b);
  };

  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto v = *it;
    std::optional<std::size_t> pick;
    for (const auto w : succ[v]) {
      if (!pick || better(w, *pick)) pick = w;
    }
    best[v].total = risk[v] + (pick ? best[*pick].total : 0.0);
    best[v].length = 1 + (pick ? best[*pick].length : 0);
    best[v].next = pick;
  }

  std::optional<std::size_t> start;
  for (std::size_t v = 0; v < n; ++v) {
    if (succ[v].empty()) continue;
    if (!start || better(v, *start)) start = v;
  }
  return {sequence(*start), best[*start].total};
}

// ---------------------------------------------------------------------------
// File formats

namespace {

ConditionSet parse_conditions(const std::string& field) {
  ConditionSet out;
  if (csv::trim(field).empty()) return out;
  for (auto& c : csv::split(field, ';')) {
    if (!c.empty()) out.insert(std::move(c));
  }
  return out;
}

// Yields (line number, fields) for every data row after the fixed header.
template <typename Fn>
void for_each_row(std::istream& in, const std::string& header, std::size_t columns, Fn&& fn) {
  const auto lines = csv::read_lines(in);
  bool header_seen = false;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (csv::is_skippable(lines[n])) continue;
    if (!header_seen) {
      if (csv::join(csv::split(lines[n]), ",") != header) {
        throw Error(ErrorCode::MalformedRow, "expected header '" + header + "'", line_no);
      }
      header_seen = true;
      continue;
    }
    auto fields = csv::split(lines[n]);
    if (fields.size() != columns) {
      throw Error(ErrorCode::MalformedRow,
                  "expected " + std::to_string(columns) + " fields, got " + std::to_string(fields.size()),
                  line_no);
    }
    fn(line_no, fields);
  }
  if (!header_seen) throw Error(ErrorCode::MalformedRow, "missing header '" + header + "'");
}

double parse_factor(const std::string& s, const char* what, std::size_t line_no) {
  const auto v = csv::parse_double(s);
  if (!v) throw Error(ErrorCode::MalformedRow, std::string("bad ") + what + " '" + s + "'", line_no);
  if (*v < 0.0) throw Error(ErrorCode::NegativeInput, std::string(what) + " must be >= 0", line_no);
  return *v;
}

}  // namespace

std::vector<AttackIncident> load_incidents(std::istream& in) {
  std::vector<AttackIncident> out;
  std::set<std::string> ids;
  for_each_row(in, "id,target,preconditions,consequences", 4,
               [&](std::size_t line_no, const std::vector<std::string>& f) {
                 AttackIncident ai{f[0], parse_conditions(f[2]), parse_conditions(f[3]), f[1]};
                 if (ai.id.empty() || ai.target.empty()) {
                   throw Error(ErrorCode::MalformedRow, "empty incident id or target", line_no);
                 }
                 if (ai.preconditions.empty() || ai.consequences.empty()) {
                   throw Error(ErrorCode::MalformedRow,
                               "preconditions and consequences must be non-empty", line_no);
                 }
                 if (!ids.insert(ai.id).second) {
                   throw Error(ErrorCode::DuplicateKey, "duplicate incident id '" + ai.id + "'", line_no);
                 }
                 out.push_back(std::move(ai));
               });
  return out;
}

std::vector<VulnerabilityRecord> load_vulnerabilities(std::istream& in) {
  std::vector<VulnerabilityRecord> out;
  std::set<std::string> nodes;
  for_each_row(in, "node,conditions,plm,fple,risk_source,privacy_weakness,feared_event,privacy_harm", 8,
               [&](std::size_t line_no, const std::vector<std::string>& f) {
                 VulnerabilityRecord r;
                 r.node = f[0];
                 if (r.node.empty()) throw Error(ErrorCode::MalformedRow, "empty node id", line_no);
                 if (!nodes.insert(r.node).second) {
                   throw Error(ErrorCode::DuplicateKey, "duplicate record for node '" + r.node + "'", line_no);
                 }
                 r.conditions = parse_conditions(f[1]);
                 r.plm = parse_factor(f[2], "plm", line_no);
                 r.fple = parse_factor(f[3], "fple", line_no);
                 r.risk_source = f[4];
                 r.privacy_weakness = f[5];
                 r.feared_event = f[6];
                 r.privacy_harm = f[7];
                 out.push_back(std::move(r));
               });
  return out;
}

std::vector<Dependency> load_dependencies(std::istream& in) {
  std::vector<Dependency> out;
  for_each_row(in, "from,to", 2, [&](std::size_t line_no, const std::vector<std::string>& f) {
    if (f[0].empty() || f[1].empty()) throw Error(ErrorCode::MalformedRow, "empty condition id", line_no);
    out.push_back({f[0], f[1]});
  });
  return out;
}

void write_svpl_csv(std::ostream& out, const std::vector<SvplEntry>& ranking) {
  out << "rank,node,risk,plm,fple\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto& e = ranking[i];
    out << (i + 1) << ',' << e.node << ',' << csv::format_double(e.risk) << ','
        << csv::format_double(e.plm) << ',' << csv::format_double(e.fple) << '\n';
  }
}

}  // namespace cpspriv

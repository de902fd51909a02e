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

#include "cpspriv/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cpspriv/attack_graph.hpp"
#include "cpspriv/csv.hpp"
#include "cpspriv/error.hpp"
#include "cpspriv/topology.hpp"

namespace cpspriv {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string_view to_string(AssignmentMode m) noexcept {
  switch (m) {
    case AssignmentMode::Udp: return "udp";
    case AssignmentMode::PdpDistance: return "pdp-distance";
    case AssignmentMode::PdpPreference: return "pdp-preference";
    case AssignmentMode::PdpExplicit: return "pdp-explicit";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected) {
  throw Error(ErrorCode::InvalidConfig, "bad value '" + value + "' for " + key + "; expected " + expected);
}

double positive(const std::string& key, const std::string& v) {
  const auto d = csv::parse_double(v);
  if (!d || !(*d > 0.0) || !std::isfinite(*d)) bad_value(key, v, "a positive number");
  return *d;
}

template <typename Int>
Int count_value(const std::string& key, const std::string& v) {
  const auto n = csv::parse_int(v);
  if (!n || *n < 1) bad_value(key, v, "a positive integer");
  return static_cast<Int>(*n);
}

std::string format_cases(const std::vector<CaseSpec>& cases) {
  std::vector<std::string> parts;
  for (const auto& c : cases) parts.push_back(csv::format_double(c.eps_fog) + ":" + csv::format_double(c.eps_cloud));
  return csv::join(parts, ",");
}

std::string format_list(const std::vector<double>& xs) {
  std::vector<std::string> parts;
  for (double x : xs) parts.push_back(csv::format_double(x));
  return csv::join(parts, ",");
}

}  // namespace

RunConfig::RunConfig() : cases(reference_cases()) {
  text_ = {
      {"aggregation", ""},     {"base_load", csv::format_double(profile.base_load)},
      {"busy_multiplier", csv::format_double(profile.busy_multiplier)},
      {"cases", format_cases(cases)},
      {"clamp", "false"},      {"dataset", ""},
      {"delta", "auto"},       {"dependencies", ""},
      {"eps_max", csv::format_double(bounds.max)},
      {"eps_min", csv::format_double(bounds.min)},
      {"epsilon", csv::format_double(epsilon)},
      {"fan_in", std::to_string(fan_in)},
      {"homes", std::to_string(homes)},
      {"incidents", ""},       {"minutes", std::to_string(minutes)},
      {"mode", "udp"},         {"noise_samples", std::to_string(noise_samples)},
      {"plan", ""},            {"seed", std::to_string(seed)},
      {"seeds", std::to_string(seeds)},
      {"sensitivity", ""},     {"sweep", format_list(sweep)},
      {"th_d", "auto"},        {"topology", ""},
      {"vulnerabilities", ""},
  };
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  std::string key(csv::trim(raw_key));
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v(csv::trim(raw_value));
  std::string canonical = v;

  if (key == "seed") {
    const auto s = csv::parse_uint64(v);
    if (!s) bad_value(key, v, "an unsigned 64-bit integer");
    seed = *s;
    canonical = std::to_string(seed);
  } else if (key == "eps_min" || key == "eps_max") {
    const double d = positive(key, v);
    (key == "eps_min" ? bounds.min : bounds.max) = d;
    canonical = csv::format_double(d);
  } else if (key == "th_d" || key == "sensitivity" || key == "delta") {
    auto& slot = key == "th_d" ? th_d : key == "sensitivity" ? sensitivity : delta;
    // Unset spellings: "auto" for the derived settings, empty for the
    // sensitivity, which has no default.
    if (v == (key == "sensitivity" ? "" : "auto")) {
      slot.reset();
    } else {
      slot = positive(key, v);
      canonical = csv::format_double(*slot);
    }
  } else if (key == "epsilon") {
    epsilon = positive(key, v);
    canonical = csv::format_double(epsilon);
  } else if (key == "cases") {
    cases = parse_cases(v);
    canonical = format_cases(cases);
  } else if (key == "mode") {
    static const std::map<std::string, AssignmentMode> modes{{"udp", AssignmentMode::Udp},
                                                              {"pdp-distance", AssignmentMode::PdpDistance},
                                                              {"pdp-preference", AssignmentMode::PdpPreference},
                                                              {"pdp-explicit", AssignmentMode::PdpExplicit}};
    const auto it = modes.find(v);
    if (it == modes.end()) bad_value(key, v, "udp, pdp-distance, pdp-preference or pdp-explicit");
    mode = it->second;
  } else if (key == "clamp") {
    if (v == "true" || v == "1") clamp = true;
    else if (v == "false" || v == "0") clamp = false;
    else bad_value(key, v, "true or false");
    canonical = clamp ? "true" : "false";
  } else if (key == "homes") {
    homes = count_value<int>(key, v);
  } else if (key == "minutes") {
    minutes = count_value<int>(key, v);
  } else if (key == "seeds") {
    seeds = count_value<std::size_t>(key, v);
  } else if (key == "fan_in") {
    fan_in = count_value<int>(key, v);
  } else if (key == "noise_samples") {
    noise_samples = count_value<std::size_t>(key, v);
  } else if (key == "base_load") {
    profile.base_load = positive(key, v);
    canonical = csv::format_double(profile.base_load);
  } else if (key == "busy_multiplier") {
    profile.busy_multiplier = positive(key, v);
    canonical = csv::format_double(profile.busy_multiplier);
  } else if (key == "sweep") {
    std::vector<double> xs;
    for (const auto& item : csv::split(v, ',')) xs.push_back(positive(key, item));
    sweep = std::move(xs);
    canonical = format_list(sweep);
  } else if (key == "topology") {
    topology = v;
  } else if (key == "dataset") {
    dataset = v;
  } else if (key == "incidents") {
    incidents = v;
  } else if (key == "vulnerabilities") {
    vulnerabilities = v;
  } else if (key == "dependencies") {
    dependencies = v;
  } else if (key == "plan") {
    plan = v;
  } else if (key == "aggregation") {
    aggregation = v;
  } else if (key == "out") {
    out = v;
    return;  // deliberately not recorded, see write()
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown config key '" + raw_key + "'");
  }
  text_[key] = canonical;
}

void RunConfig::load(std::istream& in) {
  const auto lines = csv::read_lines(in);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (csv::is_skippable(lines[n])) continue;
    const auto eq = lines[n].find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidConfig, "expected 'key = value'", n + 1);
    try {
      set(lines[n].substr(0, eq), lines[n].substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), n + 1);
    }
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config '" + path + "'");
  load(in);
}

void RunConfig::write(std::ostream& o) const {
  for (const auto& [k, v] : text_) o << k << " = " << v << '\n';
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw Error(ErrorCode::InvalidConfig, what + " file not configured");
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(ErrorCode::InvalidConfig, what + " file '" + path + "' not found");
}

double require_sensitivity(const RunConfig& c) {
  if (!c.sensitivity) {
    throw Error(ErrorCode::MissingSensitivity, "sensitivity required: set 'sensitivity' or pass --sensitivity");
  }
  return *c.sensitivity;
}

// Runs `load` on the opened file, tagging parse errors with the file name.
template <typename Loader>
auto load_from(const std::string& path, const std::string& what, Loader load) {
  require_file(path, what);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + what + " file '" + path + "'");
  try {
    return load(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir + "': " + ec.message());
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    body(out);
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
  }

  void json(const std::string& name, const Json& j) const {
    write(name, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  }

 private:
  fs::path dir_;
};

void copy_config(const OutputDir& out, const RunConfig& c) {
  out.write("config.txt", [&](std::ostream& o) { c.write(o); });
}

// Finite values as numbers; infinities as the strings "infinite"/"-infinite".
Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "infinite" : "-infinite";
  return v;
}

ConsumptionDataset input_dataset(const RunConfig& c) {
  if (c.dataset.empty()) return generate_synthetic(c.homes, c.minutes, c.seed, c.profile);
  return load_from(c.dataset, "dataset", [](std::istream& in) { return load_csv(in); });
}

GridTopology input_topology(const RunConfig& c) {
  return load_from(c.topology, "topology", [](std::istream& in) { return load_topology(in); });
}

double threshold_for(const RunConfig& c, const GridTopology& t) {
  if (c.th_d) return *c.th_d;
  const double th = max_finite_distance(t);
  if (!(th > 0.0)) throw Error(ErrorCode::InvalidThreshold, "topology has no links; set th_d explicitly");
  return th;
}

}  // namespace

// ---------------------------------------------------------------------------
// topology

void run_topology(const RunConfig& c) {
  const auto t = input_topology(c);
  const auto scores = centrality_scores(t);
  const auto dist = distance_matrix(t);
  const double diam = diameter(t);

  std::vector<std::string> labels;
  for (const auto& n : t.nodes()) labels.push_back(n.id);

  const OutputDir out(c.out);
  out.write("adjacency.csv", [&](std::ostream& o) { adjacency_matrix(t).write_csv(o, labels); });
  out.write("laplacian.csv", [&](std::ostream& o) { laplacian_matrix(t).write_csv(o, labels); });
  out.write("distances.csv", [&](std::ostream& o) { dist.write_csv(o, labels); });
  out.write("centrality.csv", [&](std::ostream& o) {
    o << "node,tier,degree,eigenvector,betweenness,closeness\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
      o << labels[i] << ',' << to_string(t.node(i).tier) << ',' << csv::format_double(scores.degree[i]) << ','
        << csv::format_double(scores.eigenvector[i]) << ',' << csv::format_double(scores.betweenness[i]) << ','
        << csv::format_double(scores.closeness[i]) << '\n';
    }
  });

  Json j;
  j["nodes"] = t.size();
  j["links"] = t.links().size();
  j["connected"] = !std::isinf(diam);
  j["diameter"] = number(diam);
  j["max_finite_distance"] = max_finite_distance(t);
  j["dominant_eigenvalue"] = scores.dominant_eigenvalue;
  j["eigen_iterations"] = scores.eigen_iterations;
  Json per_node = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    per_node.push_back({{"id", labels[i]},
                        {"tier", to_string(t.node(i).tier)},
                        {"degree", scores.degree[i]},
                        {"eigenvector", scores.eigenvector[i]},
                        {"betweenness", scores.betweenness[i]},
                        {"closeness", scores.closeness[i]}});
  }
  j["centrality"] = per_node;
  Json ranking;
  const std::pair<const char*, const std::vector<double>*> measures[] = {{"degree", &scores.degree},
                                                                         {"eigenvector", &scores.eigenvector},
                                                                         {"betweenness", &scores.betweenness},
                                                                         {"closeness", &scores.closeness}};
  for (const auto& [name, values] : measures) {
    Json ids = Json::array();
    for (auto i : rank_by_score(t, *values)) ids.push_back(labels[i]);
    ranking[name] = ids;
  }
  j["ranking"] = ranking;
  out.json("topology.json", j);
  copy_config(out, c);
}

// ---------------------------------------------------------------------------
// profile

void run_profile(const RunConfig& c) {
  const auto t = input_topology(c);
  const auto incidents = load_from(c.incidents, "incidents", [](std::istream& in) { return load_incidents(in); });
  const auto vulns =
      load_from(c.vulnerabilities, "vulnerabilities", [](std::istream& in) { return load_vulnerabilities(in); });
  std::vector<Dependency> deps;
  if (!c.dependencies.empty()) {
    deps = load_from(c.dependencies, "dependencies", [](std::istream& in) { return load_dependencies(in); });
  }

  const auto vaag = build_vaag(t, vulns, incidents, deps);
  const auto all = rank_svpl(vaag);
  const auto best = best_attack_profile(vaag);

  // The published ranking lists the nodes that suffered privacy loss.
  std::vector<SvplEntry> ranking;
  for (const auto& e : all) {
    if (const auto* n = vaag.find(e.node); n && n->attacked) ranking.push_back(e);
  }

  auto entries_json = [](const std::vector<SvplEntry>& xs) {
    Json a = Json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      a.push_back({{"rank", i + 1}, {"node", xs[i].node}, {"risk", xs[i].risk}, {"plm", xs[i].plm},
                   {"fple", xs[i].fple}});
    }
    return a;
  };
  Json path = Json::array();
  for (const auto& n : best.nodes) path.push_back(n);

  const OutputDir out(c.out);
  out.write("svpl.csv", [&](std::ostream& o) { write_svpl_csv(o, ranking); });
  out.json("svpl.json", {{"ranking", entries_json(ranking)},
                         {"all_nodes", entries_json(all)},
                         {"best_attack_profile", {{"path", path}, {"cumulative_risk", best.cumulative_risk}}}});

  Json nodes = Json::array();
  for (const auto& n : vaag.nodes) {
    nodes.push_back({{"id", n.id}, {"start", n.start}, {"attacked", n.attacked}, {"on_path", n.on_path},
                     {"plm", n.plm}, {"fple", n.fple}, {"risk", n.risk}});
  }
  Json edges = Json::array();
  for (const auto& e : vaag.edges) {
    Json cond = Json::array();
    if (const auto it = vaag.mapping.find(e); it != vaag.mapping.end()) {
      for (const auto& s : it->second) cond.push_back(s);
    }
    edges.push_back({{"from", e.from}, {"to", e.to}, {"action", e.action}, {"conditions", cond}});
  }
  Json deps_json = Json::array();
  for (const auto& d : vaag.dependencies) deps_json.push_back({{"from", d.from}, {"to", d.to}});
  Json records = Json::array();
  for (const auto& r : vaag.profile.vulnerabilities) {
    Json cond = Json::array();
    for (const auto& s : r.conditions) cond.push_back(s);
    records.push_back({{"node", r.node}, {"conditions", cond}, {"plm", r.plm}, {"fple", r.fple}});
  }
  Json matches = Json::object();
  for (const auto& [node, ids] : vaag.profile.matches) matches[node] = ids;

  out.json("attack_graph.json", {{"nodes", nodes},
                                 {"edges", edges},
                                 {"dependencies", deps_json},
                                 {"compromised", vaag.profile.compromised},
                                 {"matches", matches},
                                 {"vulnerabilities", records}});
  copy_config(out, c);
}

// ---------------------------------------------------------------------------
// privatize

namespace {

// Rows of `node,epsilon`, where epsilon is a number, auto-distance or
// auto-preference.
std::map<std::string, double> load_plan(std::istream& in, const RunConfig& c,
                                        const std::optional<GridTopology>& t) {
  std::map<std::string, double> out;
  std::map<std::string, double> by_distance;
  std::map<std::string, double> by_preference;
  const auto lines = csv::read_lines(in);
  bool header = false;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line = n + 1;
    if (csv::is_skippable(lines[n])) continue;
    const auto f = csv::split(lines[n]);
    if (!header) {
      if (csv::join(f, ",") != "node,epsilon") throw Error(ErrorCode::MalformedRow, "expected header 'node,epsilon'", line);
      header = true;
      continue;
    }
    if (f.size() != 2 || f[0].empty()) throw Error(ErrorCode::MalformedRow, "expected node,epsilon", line);
    double eps = 0.0;
    if (f[1] == "auto-distance" || f[1] == "auto-preference") {
      if (!t) throw Error(ErrorCode::InvalidConfig, f[1] + " needs a topology", line);
      auto& cache = f[1] == "auto-distance" ? by_distance : by_preference;
      if (cache.empty()) {
        cache = f[1] == "auto-distance" ? distance_epsilons(*t, threshold_for(c, *t), c.bounds, c.seed)
                                        : preference_epsilons(*t, PreferenceWeights{}, c.bounds);
      }
      const auto it = cache.find(f[0]);
      if (it == cache.end()) throw Error(ErrorCode::UnknownNode, "node '" + f[0] + "' not in topology", line);
      eps = it->second;
    } else {
      const auto v = csv::parse_double(f[1]);
      if (!v) throw Error(ErrorCode::MalformedRow, "bad epsilon '" + f[1] + "'", line);
      if (!(*v > 0.0)) throw Error(ErrorCode::NonPositiveEpsilon, "epsilon must be positive", line);
      eps = *v;
    }
    if (!out.emplace(f[0], eps).second) throw Error(ErrorCode::DuplicateKey, "node '" + f[0] + "' listed twice", line);
  }
  if (!header) throw Error(ErrorCode::MalformedRow, "missing header 'node,epsilon'");
  return out;
}

EpsilonAssignment plan_for(const RunConfig& c) {
  switch (c.mode) {
    case AssignmentMode::Udp: {
      return EpsilonAssignment::uniform(c.epsilon, c.bounds);
    }
    case AssignmentMode::PdpDistance: {
      const auto t = input_topology(c);
      return EpsilonAssignment::personalized(distance_epsilons(t, threshold_for(c, t), c.bounds, c.seed),
                                             EpsilonSource::Distance, c.bounds);
    }
    case AssignmentMode::PdpPreference: {
      const auto t = input_topology(c);
      return EpsilonAssignment::personalized(preference_epsilons(t, PreferenceWeights{}, c.bounds),
                                             EpsilonSource::Preference, c.bounds);
    }
    case AssignmentMode::PdpExplicit: {
      std::optional<GridTopology> t;
      if (!c.topology.empty()) t = input_topology(c);
      auto per_node = load_from(c.plan, "plan", [&](std::istream& in) { return load_plan(in, c, t); });
      return EpsilonAssignment::personalized(std::move(per_node), EpsilonSource::Explicit, c.bounds);
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown mode");
}

}  // namespace

void run_privatize(const RunConfig& c) {
  const double sensitivity = require_sensitivity(c);
  c.bounds.validate();
  if (!c.topology.empty()) require_file(c.topology, "topology");
  const auto d = input_dataset(c);
  const auto plan = plan_for(c);

  std::vector<SeriesPoint> series;
  series.reserve(d.records.size());
  for (const auto& r : d.records) series.push_back({r.home, r.consumption});
  BudgetLedger ledger;
  auto noisy = privatize_series(series, plan, sensitivity, ledger, c.seed, "edge");
  if (c.clamp) {
    for (auto& p : noisy) p.value = std::max(0.0, p.value);
  }

  const OutputDir out(c.out);
  out.write("privatized.csv", [&](std::ostream& o) {
    o << "home_id,timestamp,consumption\n";
    for (std::size_t i = 0; i < d.records.size(); ++i) {
      o << d.records[i].home << ',' << d.records[i].minute << ',' << csv::format_double(noisy[i].value) << '\n';
    }
  });
  out.write("epsilons.csv", [&](std::ostream& o) {
    o << "node,epsilon,source\n";
    if (plan.shared()) {
      std::set<std::string> homes;
      for (const auto& r : d.records) homes.insert(r.home);
      for (const auto& h : homes) o << h << ',' << csv::format_double(*plan.shared()) << ",uniform\n";
    } else {
      for (const auto& [node, eps] : plan.per_node()) {
        o << node << ',' << csv::format_double(eps) << ',' << to_string(plan.source()) << '\n';
      }
    }
  });
  out.write("ledger.json", [&](std::ostream& o) { ledger.write_json(o); });
  copy_config(out, c);
}

// ---------------------------------------------------------------------------
// compare

namespace {

Json level_json(const LevelResult& l) {
  Json seeds = Json::array();
  for (const auto& s : l.per_seed) {
    seeds.push_back({{"mae", s.utility.mae},
                     {"utility", s.utility.utility},
                     {"loss_mean", s.loss.mean},
                     {"loss_std", s.loss.stddev},
                     {"empirical_risk", s.empirical_risk}});
  }
  Json risk = Json::object();
  for (const auto& [node, r] : l.analytic_risk) risk[node] = r;
  return {{"epsilon", l.epsilon},          {"delta", l.delta},
          {"mean_mae", l.mean_mae},        {"mean_utility", l.mean_utility},
          {"mean_loss", l.mean_loss},      {"mean_loss_std", l.mean_loss_std},
          {"mean_empirical_risk", l.mean_empirical_risk},
          {"analytic_risk", risk},         {"per_seed", seeds}};
}

Json trend_json(const TrendCheck& t) {
  return {{"name", t.name}, {"holding", t.holding}, {"total", t.total}, {"required", t.required},
          {"pass", t.pass()}};
}

}  // namespace

void run_compare(const RunConfig& c) {
  const double sensitivity = require_sensitivity(c);
  c.bounds.validate();
  if (!c.aggregation.empty()) require_file(c.aggregation, "aggregation");
  const auto d = input_dataset(c);
  const auto map = c.aggregation.empty()
                       ? default_aggregation_map(d, c.fan_in)
                       : load_from(c.aggregation, "aggregation",
                                   [&](std::istream& in) { return load_aggregation_map(in, d); });

  CompareOptions opts;
  opts.sensitivity = sensitivity;
  opts.delta = c.delta;
  opts.seeds = derive_seeds(c.seed, c.seeds);
  opts.bounds = c.bounds;
  const auto report = compare_cases(d, map, c.cases, opts);
  const auto sweep = c.sweep.empty() ? std::vector<SweepPoint>{}
                                     : edge_utility_sweep(d, c.sweep, sensitivity, opts.seeds);

  std::vector<NoiseSpread> spreads;
  if (!c.sweep.empty()) {
    // Histogram window of four noise scales at the noisiest setting.
    const double lo = -4.0 * sensitivity / *std::min_element(c.sweep.begin(), c.sweep.end());
    for (double e : c.sweep) spreads.push_back(noise_spread(e, sensitivity, c.noise_samples, c.seed, lo));
  }

  std::vector<TrendCheck> trends;
  if (report.cases.size() > 1) trends.push_back(dominance_ordering(report));
  if (sweep.size() > 1) trends.push_back(sweep_trend(sweep));

  const OutputDir out(c.out);

  Json cases = Json::array();
  for (const auto& cr : report.cases) {
    cases.push_back({{"label", cr.spec.label},
                     {"eps_fog", cr.spec.eps_fog},
                     {"eps_cloud", cr.spec.eps_cloud},
                     {"ledger_per_cloud_record", cr.ledger_per_cloud_record},
                     {"plan_epsilon_variance", cr.plan_epsilon_variance},
                     {"fog", level_json(cr.fog)},
                     {"cloud", level_json(cr.cloud)}});
  }
  Json sweep_json = Json::array();
  for (const auto& pt : sweep) {
    Json maes = Json::array();
    for (const auto& u : pt.per_seed) maes.push_back(u.mae);
    sweep_json.push_back({{"epsilon", pt.epsilon}, {"mae", maes}});
  }
  Json noise_json = Json::array();
  for (const auto& s : spreads) noise_json.push_back({{"epsilon", s.epsilon}, {"mean", s.mean}, {"std", s.stddev}});
  Json trend_list = Json::array();
  for (const auto& t : trends) trend_list.push_back(trend_json(t));

  out.json("report.json",
           {{"seed", c.seed},
            {"seeds", opts.seeds.size()},
            {"sensitivity", sensitivity},
            {"records", d.records.size()},
            {"fog_nodes", map.fog_to_cloud.size()},
            {"cases", cases},
            {"utility_sweep", sweep_json},
            {"noise_spread", noise_json},
            {"trends", trend_list},
            {"external_reference",
             {{"note", "reference values only, computed with a different and unstated risk metric; not "
                       "comparable with the values above"},
              {"home", "114"},
              {"risk", {{"case1", 0.81}, {"case2", 0.79}, {"case3", 0.61}, {"case4", 1.01}}}}}});

  out.write("report.csv", [&](std::ostream& o) {
    o << "case,eps_fog,eps_cloud,level,metric,value\n";
    for (const auto& cr : report.cases) {
      const std::string prefix =
          cr.spec.label + ',' + csv::format_double(cr.spec.eps_fog) + ',' + csv::format_double(cr.spec.eps_cloud) + ',';
      for (const auto* name : {"fog", "cloud"}) {
        const auto& l = std::string(name) == "fog" ? cr.fog : cr.cloud;
        const std::pair<const char*, double> rows[] = {{"epsilon", l.epsilon},
                                                       {"delta", l.delta},
                                                       {"mean_mae", l.mean_mae},
                                                       {"mean_utility", l.mean_utility},
                                                       {"mean_loss", l.mean_loss},
                                                       {"mean_loss_std", l.mean_loss_std},
                                                       {"mean_empirical_risk", l.mean_empirical_risk}};
        for (const auto& [metric, value] : rows) {
          o << prefix << name << ',' << metric << ',' << csv::format_double(value) << '\n';
        }
      }
      o << prefix << "record,ledger_per_cloud_record," << csv::format_double(cr.ledger_per_cloud_record) << '\n';
      o << prefix << "plan,epsilon_variance," << csv::format_double(cr.plan_epsilon_variance) << '\n';
    }
  });

  out.write("utility_sweep.csv", [&](std::ostream& o) {
    o << "epsilon,seed,mae,pd,utility\n";
    for (const auto& pt : sweep) {
      for (std::size_t s = 0; s < pt.per_seed.size(); ++s) {
        const auto& u = pt.per_seed[s];
        o << csv::format_double(pt.epsilon) << ',' << s << ',' << csv::format_double(u.mae) << ','
          << csv::format_double(u.pd) << ',' << csv::format_double(u.utility) << '\n';
      }
    }
  });

  out.write("noise_spread.csv", [&](std::ostream& o) {
    o << "epsilon,bin_lo,bin_hi,count,density\n";
    for (const auto& s : spreads) {
      const double norm = static_cast<double>(c.noise_samples) * s.bin_width;
      for (std::size_t b = 0; b < s.histogram.size(); ++b) {
        const double lo = s.range_lo + static_cast<double>(b) * s.bin_width;
        o << csv::format_double(s.epsilon) << ',' << csv::format_double(lo) << ','
          << csv::format_double(lo + s.bin_width) << ',' << s.histogram[b] << ','
          << csv::format_double(static_cast<double>(s.histogram[b]) / norm) << '\n';
      }
    }
  });

  out.write("case_losses.csv", [&](std::ostream& o) {
    o << "case,level,seed,loss_mean,loss_std\n";
    for (const auto& cr : report.cases) {
      for (const auto* name : {"fog", "cloud"}) {
        const auto& l = std::string(name) == "fog" ? cr.fog : cr.cloud;
        for (std::size_t s = 0; s < l.per_seed.size(); ++s) {
          o << cr.spec.label << ',' << name << ',' << s << ',' << csv::format_double(l.per_seed[s].loss.mean) << ','
            << csv::format_double(l.per_seed[s].loss.stddev) << '\n';
        }
      }
    }
  });

  out.write("case_risks.csv", [&](std::ostream& o) {
    o << "case,level,node,epsilon,delta,analytic_risk,empirical_risk\n";
    for (const auto& cr : report.cases) {
      for (const auto* name : {"fog", "cloud"}) {
        const auto& l = std::string(name) == "fog" ? cr.fog : cr.cloud;
        for (const auto& [node, r] : l.analytic_risk) {
          o << cr.spec.label << ',' << name << ',' << node << ',' << csv::format_double(l.epsilon) << ','
            << csv::format_double(l.delta) << ',' << csv::format_double(r) << ','
            << csv::format_double(l.mean_empirical_risk) << '\n';
        }
      }
    }
  });

  out.write("trends.csv", [&](std::ostream& o) {
    o << "trend,holding,total,required,pass\n";
    for (const auto& t : trends) {
      o << t.name << ',' << t.holding << ',' << t.total << ',' << t.required << ',' << (t.pass() ? "true" : "false")
        << '\n';
    }
  });
  copy_config(out, c);
}

}  // namespace cpspriv

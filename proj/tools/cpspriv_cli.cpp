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

// Command-line front end. Everything goes through the C API so the tool
// exercises the same surface that other language bindings see.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpspriv/cpspriv.h"

namespace {

struct ConfigDeleter {
  void operator()(cpspriv_config* c) const { cpspriv_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<cpspriv_config, ConfigDeleter>;

// A flag that forwards its text to the config key of the same name.
struct Forwarded {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

struct Command {
  CLI::App* app = nullptr;
  cpspriv_status (*run)(const cpspriv_config*) = nullptr;
  std::string config_path;
  std::vector<std::string> overrides;  // key=value pairs from --set
  std::vector<std::unique_ptr<Forwarded>> flags;
};

void forward(Command& cmd, const std::string& key, const std::string& help) {
  auto f = std::make_unique<Forwarded>();
  f->key = key;
  f->option = cmd.app->add_option("--" + key, f->value, help);
  cmd.flags.push_back(std::move(f));
}

void add_shared_flags(Command& cmd) {
  cmd.app->add_option("--config", cmd.config_path, "Config file of 'key = value' lines; flags override it");
  forward(cmd, "seed", "Run seed (unsigned 64-bit)");
  forward(cmd, "out", "Output directory");
  forward(cmd, "eps-min", "Lower epsilon bound");
  forward(cmd, "eps-max", "Upper epsilon bound");
  forward(cmd, "th-d", "Distance threshold, or 'auto'");
  forward(cmd, "sensitivity", "Query sensitivity");
  forward(cmd, "delta", "Re-identification window, or 'auto'");
  forward(cmd, "cases", "Cases as eps_fog:eps_cloud[,eps_fog:eps_cloud...]");
  forward(cmd, "mode", "Epsilon assignment: udp, pdp-distance, pdp-preference, pdp-explicit");
  cmd.app->add_option("--set", cmd.overrides, "Any config setting as key=value (repeatable)");
}

int report_failure(cpspriv_status s) {
  std::cerr << "error [" << cpspriv_status_name(s) << "]: " << cpspriv_last_error() << '\n';
  return cpspriv_exit_code(s);
}

int execute(const Command& cmd) {
  cpspriv_config* raw = nullptr;
  if (const auto s = cpspriv_config_create(&raw); s != CPSPRIV_OK) return report_failure(s);
  ConfigPtr config(raw);

  if (!cmd.config_path.empty()) {
    if (const auto s = cpspriv_config_load_file(config.get(), cmd.config_path.c_str()); s != CPSPRIV_OK) {
      return report_failure(s);
    }
  }
  for (const auto& kv : cmd.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
      return 1;
    }
    const auto s = cpspriv_config_set(config.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (s != CPSPRIV_OK) return report_failure(s);
  }
  for (const auto& f : cmd.flags) {
    if (f->option->count() == 0) continue;
    if (const auto s = cpspriv_config_set(config.get(), f->key.c_str(), f->value.c_str()); s != CPSPRIV_OK) {
      const int code = report_failure(s);
      if (f->key == "cases") std::cerr << "usage: --cases 0.6:0.6,0.6:0.8,0.8:0.6,0.8:0.8\n";
      return code;
    }
  }
  if (const auto s = cmd.run(config.get()); s != CPSPRIV_OK) return report_failure(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy risk assessment and differential privacy pipeline for edge/fog/cloud smart grids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cpspriv_version()));

  std::vector<std::unique_ptr<Command>> commands;
  auto add = [&](const char* name, const char* help, cpspriv_status (*run)(const cpspriv_config*)) {
    auto cmd = std::make_unique<Command>();
    cmd->app = app.add_subcommand(name, help);
    cmd->run = run;
    add_shared_flags(*cmd);
    commands.push_back(std::move(cmd));
    return commands.back().get();
  };

  auto* topo = add("topology", "Topology statistics, matrices and centralities", cpspriv_cmd_topology);
  forward(*topo, "topology", "Topology file");

  auto* prof = add("profile", "Attack-graph vulnerability profile and node risk ranking", cpspriv_cmd_profile);
  forward(*prof, "topology", "Topology file");
  forward(*prof, "incidents", "Attack incidents CSV");
  forward(*prof, "vulnerabilities", "Vulnerability records CSV");
  forward(*prof, "dependencies", "Condition dependencies CSV");

  auto* priv = add("privatize", "Release a privatized dataset with its budget ledger", cpspriv_cmd_privatize);
  forward(*priv, "dataset", "Consumption CSV (synthetic data when omitted)");
  forward(*priv, "topology", "Topology file (pdp modes)");
  forward(*priv, "plan", "Per-node epsilon plan CSV (pdp-explicit)");
  forward(*priv, "epsilon", "Shared epsilon (udp)");
  forward(*priv, "homes", "Synthetic homes");
  forward(*priv, "minutes", "Synthetic minutes per home");
  forward(*priv, "clamp", "Floor privatized readings at zero (true/false)");

  auto* cmp = add("compare", "Fog/cloud case comparison and figure data", cpspriv_cmd_compare);
  forward(*cmp, "dataset", "Consumption CSV (synthetic data when omitted)");
  forward(*cmp, "aggregation", "Home/fog/cloud aggregation map CSV");
  forward(*cmp, "homes", "Synthetic homes");
  forward(*cmp, "minutes", "Synthetic minutes per home");
  forward(*cmp, "seeds", "Number of Monte-Carlo seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (const auto& cmd : commands) {
    if (cmd->app->parsed()) return execute(*cmd);
  }
  return 1;
}

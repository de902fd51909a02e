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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int exit = -1;
  std::string output;  // stdout and stderr, interleaved
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(CPSPRIV_SCRATCH) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run cli(const std::string& args) {
  const fs::path log = fs::path(CPSPRIV_SCRATCH) / "last_output.txt";
  fs::create_directories(log.parent_path());
  const std::string cmd = std::string("\"") + CPSPRIV_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = slurp(log);
  return r;
}

const std::string kFix = CPSPRIV_FIXTURE_DIR;

}  // namespace

TEST_CASE("help and parse errors") {
  CHECK(cli("--help").exit == 0);
  CHECK(cli("").exit == 1);
  CHECK(cli("frobnicate").exit == 1);
  CHECK(cli("topology --no-such-flag").exit == 1);
}

TEST_CASE("topology summaries") {
  const auto dir = scratch("topo");
  auto r = cli("topology --topology " + kFix + "/two_node.txt --out " + dir.string());
  REQUIRE(r.exit == 0);
  auto j = nlohmann::json::parse(slurp(dir / "topology.json"));
  CHECK(j["diameter"] == 2.5);

  r = cli("topology --topology " + kFix + "/disconnected.txt --out " + dir.string());
  REQUIRE(r.exit == 0);
  j = nlohmann::json::parse(slurp(dir / "topology.json"));
  CHECK(j["diameter"] == "infinite");

  r = cli("topology --topology " + kFix + "/grid30/topology.txt --out " + dir.string());
  REQUIRE(r.exit == 0);
  CHECK(slurp(dir / "centrality.csv") == slurp(kFix + "/grid30/centrality_golden.csv"));

  r = cli("topology --topology " + kFix + "/missing.txt --out " + dir.string());
  CHECK(r.exit == 1);
  CHECK(r.output.find("error [InvalidConfig]") != std::string::npos);
}

TEST_CASE("profile exit codes") {
  const auto dir = scratch("profile");
  const std::string base = "profile --topology " + kFix + "/attack5/topology.txt --vulnerabilities " + kFix +
                           "/attack5/vulnerabilities.csv --out " + dir.string();
  auto r = cli(base + " --incidents " + kFix + "/attack5/incidents.csv --dependencies " + kFix +
               "/attack5/dependencies.csv");
  REQUIRE(r.exit == 0);
  // Risks print in shortest round-trip form; the fixture keeps hand values.
  const auto got = slurp(dir / "svpl.csv");
  CHECK(got.find("1,c,0.7200000000000001,0.9,0.8\n2,f1,0.3,0.6,0.5\n3,m2,0.2,0.4,0.5\n") != std::string::npos);

  r = cli(base + " --incidents " + kFix + "/empty_incidents.csv");
  CHECK(r.exit == 0);
  CHECK(slurp(dir / "svpl.csv") == "rank,node,risk,plm,fple\n");

  r = cli(base + " --incidents " + kFix + "/malformed_incidents.csv");
  CHECK(r.exit == 1);
  CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("privatize through the command line") {
  const auto a = scratch("priv_a");
  const auto b = scratch("priv_b");
  const std::string args = "privatize --dataset " + kFix + "/three_tier_dataset.csv --topology " + kFix +
                           "/three_tier.txt --mode pdp-distance --seed 3 --sensitivity 1";
  REQUIRE(cli(args + " --out " + a.string()).exit == 0);
  REQUIRE(cli(args + " --out " + b.string()).exit == 0);
  for (const char* f : {"privatized.csv", "epsilons.csv", "ledger.json", "config.txt"})
    CHECK(slurp(a / f) == slurp(b / f));

  auto r = cli("privatize --dataset " + kFix + "/three_tier_dataset.csv --out " + a.string());
  CHECK(r.exit == 1);
  CHECK(r.output.find("sensitivity required") != std::string::npos);

  // Named flags override --set, which overrides the config file.
  const auto conf = a / "run.conf";
  std::ofstream(conf) << "sensitivity = 5\nepsilon = 0.2\n";
  r = cli("privatize --config " + conf.string() + " --set epsilon=0.3 --set sensitivity=2 --sensitivity 1 --dataset " +
          kFix + "/three_tier_dataset.csv --out " + b.string());
  REQUIRE(r.exit == 0);
  const auto cfg = slurp(b / "config.txt");
  CHECK(cfg.find("sensitivity = 1\n") != std::string::npos);
  CHECK(cfg.find("epsilon = 0.3\n") != std::string::npos);

  CHECK(cli("privatize --set bogus --sensitivity 1 --out " + b.string()).exit == 1);
}

TEST_CASE("compare argument checks") {
  const auto dir = scratch("compare");
  auto r = cli("compare --sensitivity 1 --cases \"0.6;0.6\" --out " + dir.string());
  CHECK(r.exit == 1);
  CHECK(r.output.find("usage: --cases") != std::string::npos);

  r = cli("compare --out " + dir.string());
  CHECK(r.exit == 1);
  CHECK(r.output.find("sensitivity required") != std::string::npos);

  r = cli("compare --sensitivity 1 --homes 10 --minutes 30 --seeds 2 --set noise_samples=1000 --out " +
          dir.string());
  CHECK(r.exit == 0);
  CHECK(fs::exists(dir / "report.json"));
}

// Copyright 2026 The tabxform Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Drives the built command-line tool as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "tabxform/io.hpp"

namespace fs = std::filesystem;

namespace {

int Cli(const std::string& args) {
  const std::string cmd = std::string("'") + TABXFORM_CLI_PATH + "' " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

fs::path Dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("tabxform_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string Q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 1") {
  const auto d = Dir("usage");
  CHECK(Cli("") == 1);
  CHECK(Cli("frobnicate") == 1);
  CHECK(Cli("gen-bench --kind nope --out " + Q(d)) == 1);
  CHECK(Cli("gen-train --len-min 9 --len-max 3 --out " + Q(d)) == 1);
  tabxform::WriteFile(d / "ex.csv", "source,target\na,b\n");
  CHECK(Cli("noise --examples " + Q(d / "ex.csv") + " --ratio 1.5 --out " + Q(d)) == 1);
  tabxform::WriteFile(d / "col.csv", "value\na\n");
  CHECK(Cli("join --backend remote --source " + Q(d / "col.csv") + " --target " + Q(d / "col.csv") +
            " --examples " + Q(d / "ex.csv") + " --out " + Q(d)) == 1);
  CHECK(Cli("join --mode sideways --source " + Q(d / "col.csv") + " --target " + Q(d / "col.csv") +
            " --examples " + Q(d / "ex.csv") + " --out " + Q(d)) == 1);
}

TEST_CASE("data errors exit 2") {
  const auto d = Dir("data");
  tabxform::WriteFile(d / "matches.csv",
                      "source,predicted,matched,distance,support,trials\na,b,b,0,1,1\n");
  tabxform::WriteFile(d / "truth.csv", "value\nb\nc\n");
  CHECK(Cli("eval --pred " + Q(d / "matches.csv") + " --truth " + Q(d / "truth.csv")) == 2);
  tabxform::WriteFile(d / "ok.csv", "value\nb\n");
  CHECK(Cli("eval --pred " + Q(d / "matches.csv") + " --truth " + Q(d / "ok.csv") +
            " --out " + Q(d / "report.json")) == 0);
  const auto report = nlohmann::json::parse(tabxform::ReadFile(d / "report.json"));
  CHECK(report["f1"] == 1.0);
  CHECK(Cli("eval --pred " + Q(d / "nope.csv") + " --truth " + Q(d / "ok.csv")) == 2);
  tabxform::WriteFile(d / "col.csv", "value\na<eos>\n");
  tabxform::WriteFile(d / "ex.csv", "source,target\nx,y\nz,w\n");
  CHECK(Cli("join --source " + Q(d / "col.csv") + " --target " + Q(d / "ok.csv") +
            " --examples " + Q(d / "ex.csv") + " --out " + Q(d / "j")) == 2);
}

TEST_CASE("gen-bench defaults") {
  const auto d = Dir("bench");
  REQUIRE(Cli("gen-bench --kind syn-rv --seed 4 --out " + Q(d)) == 0);
  int tables = 0;
  for (const auto& e : fs::directory_iterator(d)) {
    if (!e.is_directory()) continue;
    ++tables;
    CHECK(tabxform::ReadColumnCsv(e.path() / "source.csv").size() == 50);
    CHECK(tabxform::ReadColumnCsv(e.path() / "target.csv").size() == 50);
  }
  CHECK(tables == 5);
  const auto m = nlohmann::json::parse(tabxform::ReadFile(d / "manifest.json"));
  CHECK(m["command"] == "gen-bench");
  CHECK(m["seeds"]["seed"] == 4);
}

TEST_CASE("gen-train writes one line per sample and replays identically") {
  const auto d = Dir("train");
  REQUIRE(Cli("gen-train --groupings 1 --pairs 3 --subsets 1 --out " + Q(d / "a")) == 0);
  const auto corpus = tabxform::ReadFile(d / "a" / "corpus.jsonl");
  CHECK(std::count(corpus.begin(), corpus.end(), '\n') == 1);
  // The seed was generated; the manifest must carry it so replay reproduces the bytes.
  REQUIRE(Cli("replay --manifest " + Q(d / "a" / "manifest.json") + " --out " + Q(d / "b")) == 0);
  CHECK(tabxform::ReadFile(d / "b" / "corpus.jsonl") == corpus);
}

TEST_CASE("split, join, eval pipeline") {
  const auto d = Dir("pipe");
  REQUIRE(Cli("gen-bench --kind syn-st --tables 1 --rows 10 --seed 2 --out " + Q(d / "bench")) == 0);
  REQUIRE(Cli("split --table " + Q(d / "bench" / "table000") + " --out " + Q(d / "t")) == 0);
  REQUIRE(Cli("join --source " + Q(d / "t" / "source.csv") + " --target " + Q(d / "t" / "target.csv") +
              " --examples " + Q(d / "t" / "examples.csv") + " --seed 1 --out " + Q(d / "t")) == 0);
  REQUIRE(Cli("eval --pred " + Q(d / "t" / "matches.csv") + " --truth " + Q(d / "t" / "truth.csv") +
              " --out " + Q(d / "r.json")) == 0);
  const auto report = nlohmann::json::parse(tabxform::ReadFile(d / "r.json"));
  CHECK(report["rows"] == 5);
  CHECK(report["f1"] == 1.0);
  REQUIRE(Cli("eval --dataset " + Q(d) + " --out " + Q(d / "ds.json")) == 0);
  CHECK(nlohmann::json::parse(tabxform::ReadFile(d / "ds.json"))["tables"].size() == 1);
  fs::remove_all(d.parent_path());
}

}  // TEST_SUITE

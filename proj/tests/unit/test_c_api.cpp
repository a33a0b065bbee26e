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


#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "tabxform/io.hpp"
#include "tabxform/mock_server.hpp"
#include "tabxform/tabxform.h"

namespace fs = std::filesystem;

namespace {

fs::path Dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("tabxform_capi_" + std::to_string(::getpid())) / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string Take(char* s) {
  std::string r = s ? s : "";
  tx_string_free(s);
  return r;
}

void WriteToyTables(const fs::path& d) {
  tabxform::WriteFile(d / "examples.csv",
                      "source,target\nJustin Trudeau,jtrudeau\nStephen Harper,sharper\n");
  tabxform::WriteFile(d / "source.csv", "value\nJean Chretien\nPaul Martin\n");
  tabxform::WriteFile(d / "target.csv", "value\npmartin\njchretien\nkcampbell\n");
}

}  // namespace

TEST_SUITE("c_api") {

TEST_CASE("status names and version") {
  CHECK(std::string(tx_version()) == "0.1.0");
  CHECK(std::string(tx_status_name(TX_OK)) == "ok");
  CHECK(std::string(tx_status_name(TX_ERR_REMOTE)).size() > 0);
}

TEST_CASE("apply and synthesize") {
  char* out = nullptr;
  REQUIRE(tx_apply("split(' ',1)|lower", "Justin Trudeau", &out) == TX_OK);
  CHECK(Take(out) == "trudeau");
  CHECK(tx_apply("split(' ',", "x", &out) == TX_ERR_PARSE);
  CHECK(std::string(tx_last_error()).size() > 0);
  CHECK(tx_apply("lower", "\xff", &out) == TX_ERR_INVALID_UTF8);
  CHECK(tx_apply(nullptr, "x", &out) == TX_ERR_CONFIG);

  const char* src[] = {"Justin Trudeau", "Stephen Harper"};
  const char* tgt[] = {"trudeau", "harper"};
  char* prog = nullptr;
  REQUIRE(tx_synthesize(src, tgt, 2, &prog) == TX_OK);
  REQUIRE(prog != nullptr);
  const std::string p = Take(prog);
  for (int i = 0; i < 2; ++i) {
    REQUIRE(tx_apply(p.c_str(), src[i], &out) == TX_OK);
    CHECK(Take(out) == tgt[i]);
  }
  const char* odd_src[] = {"ab", "cd"};
  const char* odd_tgt[] = {"zzz", "www"};
  REQUIRE(tx_synthesize(odd_src, odd_tgt, 2, &prog) == TX_OK);
  CHECK(prog == nullptr);
}

TEST_CASE("join files with synthesis") {
  const auto d = Dir("join");
  WriteToyTables(d);
  tx_synthesis_options so;
  tx_synthesis_options_init(&so);
  tx_predictor* p = nullptr;
  REQUIRE(tx_predictor_new_synthesis(&so, &p) == TX_OK);
  tx_join_options jo;
  tx_join_options_init(&jo);
  jo.seed = 3;
  tx_join_summary sum{};
  const auto out = (d / "matches.csv").string();
  REQUIRE(tx_join_files((d / "source.csv").c_str(), (d / "target.csv").c_str(),
                        (d / "examples.csv").c_str(), p, &jo, out.c_str(), &sum) == TX_OK);
  CHECK(sum.rows == 2);
  CHECK(sum.matched_rows == 2);
  const auto rows = tabxform::ParseCsv(tabxform::ReadFile(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == tabxform::CsvRow{"source", "predicted", "matched", "distance", "support", "trials"});
  CHECK(rows[1][2] == "jchretien");
  CHECK(rows[1][3] == "0");
  CHECK(rows[2][2] == "pmartin");

  tabxform::WriteFile(d / "truth.csv", "value\njchretien\npmartin\n");
  char* json = nullptr;
  REQUIRE(tx_eval_table(out.c_str(), (d / "truth.csv").c_str(), &json) == TX_OK);
  const auto report = nlohmann::json::parse(Take(json));
  CHECK(report["f1"] == 1.0);

  tabxform::WriteFile(d / "short.csv", "value\njchretien\n");
  CHECK(tx_eval_table(out.c_str(), (d / "short.csv").c_str(), &json) == TX_ERR_LENGTH_MISMATCH);

  tabxform::WriteFile(d / "empty_target.csv", "value\n");
  CHECK(tx_join_files((d / "source.csv").c_str(), (d / "empty_target.csv").c_str(),
                      (d / "examples.csv").c_str(), p, &jo, out.c_str(), nullptr) ==
        TX_ERR_EMPTY_TARGET_TABLE);
  tx_predictor_free(p);
}

TEST_CASE("predictor construction errors") {
  tx_remote_options ro;
  tx_remote_options_init(&ro);
  tx_predictor* p = nullptr;
  CHECK(tx_predictor_new_remote(&ro, &p) == TX_ERR_CONFIG);
  ro.endpoint = "http://127.0.0.1:1/v1";
  ro.auth_env = "TABXFORM_CAPI_SURELY_UNSET";
  ::unsetenv(ro.auth_env);
  CHECK(tx_predictor_new_remote(&ro, &p) == TX_ERR_CONFIG);

  tx_synthesis_options so;
  tx_synthesis_options_init(&so);
  tx_predictor* s = nullptr;
  REQUIRE(tx_predictor_new_synthesis(&so, &s) == TX_OK);
  const tx_predictor* one[] = {s};
  CHECK(tx_predictor_new_ensemble(one, 1, &p) == TX_ERR_CONFIG);
  tx_predictor_free(s);
}

TEST_CASE("remote join reports total failure") {
  ::setenv("TABXFORM_CAPI_TOKEN", "secret", 1);
  tabxform::MockLlmServer server(tabxform::MockScript::FromJson(
      R"({"default": {"status": 500, "text": ""}, "token": "secret"})"));
  server.Start();
  const auto d = Dir("remote");
  WriteToyTables(d);
  tx_remote_options ro;
  tx_remote_options_init(&ro);
  const auto url = server.url();
  ro.endpoint = url.c_str();
  ro.auth_env = "TABXFORM_CAPI_TOKEN";
  ro.retries = 0;
  tx_predictor* p = nullptr;
  REQUIRE(tx_predictor_new_remote(&ro, &p) == TX_OK);
  tx_join_options jo;
  tx_join_options_init(&jo);
  jo.trials = 2;
  tx_join_summary sum{};
  const auto out = (d / "matches.csv").string();
  CHECK(tx_join_files((d / "source.csv").c_str(), (d / "target.csv").c_str(),
                      (d / "examples.csv").c_str(), p, &jo, out.c_str(), &sum) == TX_ERR_REMOTE);
  CHECK(sum.failed_rows == 2);
  CHECK(sum.failed_trials == 4);
  CHECK(fs::exists(out));
  tx_predictor_free(p);
  server.Stop();
}

TEST_CASE("generation and splitting") {
  const auto d = Dir("gen");
  tx_bench_options bo;
  CHECK(tx_bench_options_init(&bo, "nope") == TX_ERR_CONFIG);
  REQUIRE(tx_bench_options_init(&bo, "syn-st") == TX_OK);
  CHECK(bo.tables == 5);
  CHECK(bo.rows == 50);
  bo.tables = 2;
  bo.rows = 6;
  bo.seed = 9;
  REQUIRE(tx_gen_bench(&bo, (d / "bench").c_str()) == TX_OK);
  CHECK(fs::exists(d / "bench" / "table000" / "meta.json"));
  CHECK(fs::exists(d / "bench" / "table001" / "source.csv"));

  size_t ex = 0, held = 0;
  REQUIRE(tx_split_table((d / "bench" / "table000").c_str(), (d / "split").c_str(), &ex, &held) == TX_OK);
  CHECK(ex == 3);
  CHECK(held == 3);
  CHECK(tabxform::ReadExamplesCsv(d / "split" / "examples.csv").size() == 3);
  CHECK(tabxform::ReadColumnCsv(d / "split" / "truth.csv") ==
        tabxform::ReadColumnCsv(d / "split" / "target.csv"));

  size_t replaced = 0;
  REQUIRE(tx_noise_file((d / "split" / "examples.csv").c_str(), 0.5, 1,
                        (d / "noisy.csv").c_str(), &replaced) == TX_OK);
  CHECK(replaced == 2);  // 1.5 rounds to 2
  CHECK(tx_noise_file((d / "split" / "examples.csv").c_str(), 1.5, 1,
                      (d / "noisy.csv").c_str(), &replaced) == TX_ERR_CONFIG);

  tx_train_options to;
  tx_train_options_init(&to);
  to.groupings = 2;
  to.pairs = 4;
  to.subsets = 2;
  to.seed = 1;
  size_t samples = 0, train = 0;
  REQUIRE(tx_gen_train(&to, (d / "c.jsonl").c_str(), &samples, &train) == TX_OK);
  CHECK(samples == 4);
  to.len_min = 10;
  to.len_max = 5;
  CHECK(tx_gen_train(&to, (d / "c.jsonl").c_str(), &samples, &train) == TX_ERR_CONFIG);

  char* hex = nullptr;
  tabxform::WriteFile(d / "abc.txt", "abc");
  REQUIRE(tx_sha256_file((d / "abc.txt").c_str(), &hex) == TX_OK);
  CHECK(Take(hex) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(tx_sha256_file((d / "missing").c_str(), &hex) == TX_ERR_IO);
  fs::remove_all(d.parent_path());
}

}  // TEST_SUITE

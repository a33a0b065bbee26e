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


// tabxform command-line tool. Talks to the library only through tabxform.h.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 remote error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tabxform.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRemote = 3;

int ExitCode(tx_status s) {
  switch (s) {
    case TX_OK: return kExitOk;
    case TX_ERR_CONFIG: return kExitUsage;
    case TX_ERR_REMOTE: return kExitRemote;
    default: return kExitData;
  }
}

// Thrown to unwind a command with a library failure.
struct Failure {
  tx_status status;
};

void Check(tx_status s) {
  if (s != TX_OK) {
    std::cerr << "tabxform: " << tx_status_name(s) << ": " << tx_last_error() << "\n";
    throw Failure{s};
  }
}

std::string TakeString(char* s) {
  std::string out = s ? s : "";
  tx_string_free(s);
  return out;
}

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t FreshSeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string Digest(const fs::path& p) {
  char* hex = nullptr;
  Check(tx_sha256_file(p.string().c_str(), &hex));
  return TakeString(hex);
}

// Collects everything needed to re-run a command and writes manifest.json.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv)
      : command_(std::move(command)), argv_(std::move(argv)), started_(UtcNow()) {}

  Json& config() { return config_; }
  void Seed(std::uint64_t seed) {
    seeds_["seed"] = seed;
    // The replay arguments always carry the seed that was used.
    bool has_seed = false;
    for (const auto& a : argv_) has_seed |= a == "--seed" || a.rfind("--seed=", 0) == 0;
    if (!has_seed) {
      argv_.push_back("--seed");
      argv_.push_back(std::to_string(seed));
    }
  }
  void Input(const std::string& path) { inputs_[path] = Digest(path); }
  void Output(const fs::path& dir, const std::string& name) {
    outputs_[name] = Digest(dir / name);
  }

  void Write(const fs::path& dir) const {
    Json j;
    j["tool"] = "tabxform";
    j["version"] = tx_version();
    j["command"] = command_;
    j["argv"] = argv_;
    j["config"] = config_;
    j["seeds"] = seeds_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["started"] = started_;
    j["finished"] = UtcNow();
    fs::create_directories(dir);
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    out << j.dump(2) << "\n";
    if (!out) {
      std::cerr << "tabxform: cannot write " << (dir / "manifest.json") << "\n";
      throw Failure{TX_ERR_IO};
    }
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::string started_;
  Json config_ = Json::object();
  Json seeds_ = Json::object();
  Json inputs_ = Json::object();
  Json outputs_ = Json::object();
};

struct GenTrainArgs {
  std::size_t groupings = 2000, pairs = 10, subsets = 10;
  std::int64_t len_min = 8, len_max = 35;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct GenBenchArgs {
  std::string kind;
  std::optional<std::size_t> tables, rows;
  std::int64_t len_min = 8, len_max = 35;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct SplitArgs {
  std::string table, out;
};

struct JoinArgs {
  std::string source, target, examples, out;
  std::string backend = "synthesis";
  std::size_t trials = 5, k = 2, threads = 1;
  std::string mode = "one-to-one";
  std::optional<std::int64_t> min_dist, max_dist;
  std::optional<std::uint64_t> seed;
  // synthesis
  std::size_t max_chains = 6, max_candidates = 200000;
  std::int64_t time_budget_ms = 2000;
  // remote
  std::string endpoint, auth_env;
  double temperature = 0.0;
  std::size_t max_tokens = 64, max_in_flight = 4;
  std::int64_t timeout_ms = 10000;
  int retries = 2;
};

struct EvalArgs {
  std::string pred, truth, dataset, out;
  std::string pred_name = "matches.csv", truth_name = "truth.csv";
};

struct NoiseArgs {
  std::string examples, out;
  double ratio = 0.0;
  std::optional<std::uint64_t> seed;
};

struct ReplayArgs {
  std::string manifest, out;
};

int Run(const std::vector<std::string>& args);

int GenTrain(const GenTrainArgs& a, Manifest& m) {
  tx_train_options o;
  tx_train_options_init(&o);
  o.groupings = a.groupings;
  o.pairs = a.pairs;
  o.subsets = a.subsets;
  o.len_min = a.len_min;
  o.len_max = a.len_max;
  o.seed = a.seed.value_or(FreshSeed());
  m.Seed(o.seed);
  m.config() = {{"groupings", o.groupings}, {"pairs", o.pairs},
                {"subsets", o.subsets}, {"len_min", o.len_min},
                {"len_max", o.len_max}};
  const fs::path out(a.out);
  std::size_t samples = 0, train = 0;
  Check(tx_gen_train(&o, (out / "corpus.jsonl").string().c_str(), &samples, &train));
  m.Output(out, "corpus.jsonl");
  m.config()["samples"] = samples;
  m.config()["train_samples"] = train;
  m.Write(out);
  std::cout << samples << " samples (" << train << " train) -> " << (out / "corpus.jsonl").string() << "\n";
  return kExitOk;
}

int GenBench(const GenBenchArgs& a, Manifest& m) {
  tx_bench_options o;
  Check(tx_bench_options_init(&o, a.kind.c_str()));
  if (a.tables) o.tables = *a.tables;
  if (a.rows) o.rows = *a.rows;
  o.len_min = a.len_min;
  o.len_max = a.len_max;
  o.seed = a.seed.value_or(FreshSeed());
  m.Seed(o.seed);
  m.config() = {{"kind", o.kind}, {"tables", o.tables}, {"rows", o.rows},
                {"len_min", o.len_min}, {"len_max", o.len_max}};
  Check(tx_gen_bench(&o, a.out.c_str()));
  for (std::size_t i = 0; i < o.tables; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "table%03zu", i);
    for (const char* f : {"source.csv", "target.csv", "meta.json"}) {
      m.Output(a.out, std::string(name) + "/" + f);
    }
  }
  m.Write(a.out);
  std::cout << o.tables << " " << o.kind << " tables of " << o.rows << " rows -> " << a.out << "\n";
  return kExitOk;
}

int Split(const SplitArgs& a, Manifest& m) {
  m.Input((fs::path(a.table) / "source.csv").string());
  m.Input((fs::path(a.table) / "target.csv").string());
  std::size_t examples = 0, held_out = 0;
  Check(tx_split_table(a.table.c_str(), a.out.c_str(), &examples, &held_out));
  for (const char* f : {"examples.csv", "source.csv", "target.csv", "truth.csv"}) {
    m.Output(a.out, f);
  }
  m.Write(a.out);
  std::cout << examples << " examples, " << held_out << " held-out rows -> " << a.out << "\n";
  return kExitOk;
}

struct PredictorHandle {
  tx_predictor* p = nullptr;
  ~PredictorHandle() { tx_predictor_free(p); }
};

int Join(const JoinArgs& a, Manifest& m) {
  tx_synthesis_options so;
  tx_synthesis_options_init(&so);
  so.max_chains = a.max_chains;
  so.max_candidates = a.max_candidates;
  so.time_budget_ms = a.time_budget_ms;

  tx_remote_options ro;
  tx_remote_options_init(&ro);
  ro.endpoint = a.endpoint.c_str();
  ro.auth_env = a.auth_env.c_str();
  ro.temperature = a.temperature;
  ro.max_tokens = a.max_tokens;
  ro.timeout_ms = a.timeout_ms;
  ro.retries = a.retries;
  ro.max_in_flight = a.max_in_flight;

  const bool remote = a.backend != "synthesis";
  if (remote && a.auth_env.empty()) {
    std::cerr << "tabxform: config: --auth-env is required for the " << a.backend << " backend\n";
    return kExitUsage;
  }
  if (remote && a.endpoint.empty()) {
    std::cerr << "tabxform: config: --endpoint is required for the " << a.backend << " backend\n";
    return kExitUsage;
  }

  PredictorHandle synth, rem, ens;
  const tx_predictor* predictor = nullptr;
  if (a.backend == "synthesis") {
    Check(tx_predictor_new_synthesis(&so, &synth.p));
    predictor = synth.p;
  } else if (a.backend == "remote") {
    Check(tx_predictor_new_remote(&ro, &rem.p));
    predictor = rem.p;
  } else {
    Check(tx_predictor_new_synthesis(&so, &synth.p));
    Check(tx_predictor_new_remote(&ro, &rem.p));
    const tx_predictor* members[] = {synth.p, rem.p};
    Check(tx_predictor_new_ensemble(members, 2, &ens.p));
    predictor = ens.p;
  }

  tx_join_options o;
  tx_join_options_init(&o);
  o.mode = a.mode == "bounded" ? TX_JOIN_BOUNDED : TX_JOIN_ONE_TO_ONE;
  o.min_distance = a.min_dist.value_or(-1);
  o.max_distance = a.max_dist.value_or(-1);
  o.k = a.k;
  o.trials = a.trials;
  o.threads = a.threads;
  o.seed = a.seed.value_or(FreshSeed());
  m.Seed(o.seed);

  Json cfg = {{"backend", a.backend}, {"mode", a.mode}, {"trials", a.trials},
              {"k", a.k}, {"threads", a.threads},
              {"min_dist", a.min_dist ? Json(*a.min_dist) : Json(nullptr)},
              {"max_dist", a.max_dist ? Json(*a.max_dist) : Json(nullptr)}};
  if (a.backend != "remote") {
    cfg["synthesis"] = {{"max_chains", a.max_chains},
                        {"max_candidates", a.max_candidates},
                        {"time_budget_ms", a.time_budget_ms}};
  }
  if (remote) {
    // The token itself never reaches the manifest.
    cfg["remote"] = {{"endpoint", a.endpoint}, {"auth_env", a.auth_env},
                     {"temperature", a.temperature}, {"max_tokens", a.max_tokens},
                     {"timeout_ms", a.timeout_ms}, {"retries", a.retries},
                     {"max_in_flight", a.max_in_flight}};
  }
  m.config() = cfg;
  m.Input(a.source);
  m.Input(a.target);
  m.Input(a.examples);

  const fs::path out(a.out);
  fs::create_directories(out);
  tx_join_summary s{};
  const tx_status status = tx_join_files(a.source.c_str(), a.target.c_str(), a.examples.c_str(),
                                         predictor, &o, (out / "matches.csv").string().c_str(), &s);
  if (status != TX_OK && status != TX_ERR_REMOTE) Check(status);
  m.Output(out, "matches.csv");
  m.config()["summary"] = {{"rows", s.rows}, {"predicted_rows", s.predicted_rows},
                           {"matched_rows", s.matched_rows}, {"failed_rows", s.failed_rows},
                           {"trials", s.trials}, {"failed_trials", s.failed_trials}};
  m.Write(out);
  if (s.failed_trials > 0) {
    std::cerr << "tabxform: warning: " << s.failed_trials << " of " << s.trials
              << " trials failed remotely and were counted as absent\n";
  }
  Check(status);
  std::cout << s.matched_rows << " of " << s.rows << " rows matched -> "
            << (out / "matches.csv").string() << "\n";
  return kExitOk;
}

int Eval(const EvalArgs& a) {
  char* json = nullptr;
  if (!a.dataset.empty()) {
    Check(tx_eval_dataset(a.dataset.c_str(), a.pred_name.c_str(), a.truth_name.c_str(), &json));
  } else {
    if (a.pred.empty() || a.truth.empty()) {
      std::cerr << "tabxform: config: eval needs --pred and --truth, or --dataset\n";
      return kExitUsage;
    }
    Check(tx_eval_table(a.pred.c_str(), a.truth.c_str(), &json));
  }
  const std::string report = TakeString(json) + "\n";
  if (a.out.empty()) {
    std::cout << report;
  } else {
    const fs::path out(a.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    f << report;
    if (!f) {
      std::cerr << "tabxform: io: cannot write " << a.out << "\n";
      return kExitData;
    }
  }
  return kExitOk;
}

int Noise(const NoiseArgs& a, Manifest& m) {
  const std::uint64_t seed = a.seed.value_or(FreshSeed());
  m.Seed(seed);
  m.config() = {{"ratio", a.ratio}};
  m.Input(a.examples);
  const fs::path out(a.out);
  std::size_t replaced = 0;
  Check(tx_noise_file(a.examples.c_str(), a.ratio, seed,
                      (out / "examples.csv").string().c_str(), &replaced));
  m.Output(out, "examples.csv");
  m.config()["replaced"] = replaced;
  m.Write(out);
  std::cout << replaced << " targets replaced -> " << (out / "examples.csv").string() << "\n";
  return kExitOk;
}

int Replay(const ReplayArgs& a) {
  Json j;
  try {
    std::ifstream in(a.manifest, std::ios::binary);
    if (!in) {
      std::cerr << "tabxform: io: cannot open " << a.manifest << "\n";
      return kExitData;
    }
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    std::cerr << "tabxform: parse: " << a.manifest << ": " << e.what() << "\n";
    return kExitData;
  }
  if (!j.contains("argv") || !j["argv"].is_array()) {
    std::cerr << "tabxform: parse: manifest has no argv\n";
    return kExitData;
  }
  std::vector<std::string> args = j["argv"].get<std::vector<std::string>>();
  if (!a.out.empty()) {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--out") args[i + 1] = a.out;
    }
  }
  return Run(args);
}

int Run(const std::vector<std::string>& args) {
  CLI::App app{"Table joins across formats via example-driven string transformations"};
  app.set_version_flag("--version", std::string(tx_version()));
  app.require_subcommand(1);

  GenTrainArgs gt;
  auto* c_gt = app.add_subcommand("gen-train", "Generate the synthetic training corpus (JSONL)");
  c_gt->add_option("--groupings", gt.groupings, "Transformation groupings")->capture_default_str();
  c_gt->add_option("--pairs", gt.pairs, "Source/target pairs per grouping")->capture_default_str();
  c_gt->add_option("--subsets", gt.subsets, "3-example subsets per grouping")->capture_default_str();
  c_gt->add_option("--len-min", gt.len_min, "Minimum source length")->capture_default_str();
  c_gt->add_option("--len-max", gt.len_max, "Maximum source length")->capture_default_str();
  c_gt->add_option("--seed", gt.seed, "RNG seed (random if omitted, recorded in the manifest)");
  c_gt->add_option("--out", gt.out, "Output directory")->required();

  GenBenchArgs gb;
  auto* c_gb = app.add_subcommand("gen-bench", "Generate synthetic benchmark table pairs");
  c_gb->add_option("--kind", gb.kind, "syn | syn-rp | syn-st | syn-rv")
      ->required()
      ->check(CLI::IsMember({"syn", "syn-rp", "syn-st", "syn-rv"}));
  c_gb->add_option("--tables", gb.tables, "Tables (default 10 for syn, 5 otherwise)");
  c_gb->add_option("--rows", gb.rows, "Rows per table (default 100 for syn, 50 otherwise)");
  c_gb->add_option("--len-min", gb.len_min, "Minimum source length")->capture_default_str();
  c_gb->add_option("--len-max", gb.len_max, "Maximum source length")->capture_default_str();
  c_gb->add_option("--seed", gb.seed, "RNG seed (random if omitted)");
  c_gb->add_option("--out", gb.out, "Output directory")->required();

  SplitArgs sp;
  auto* c_sp = app.add_subcommand("split", "Split a table pair into examples and held-out rows");
  c_sp->add_option("--table", sp.table, "Directory with source.csv and target.csv")->required();
  c_sp->add_option("--out", sp.out, "Output directory")->required();

  JoinArgs jn;
  auto* c_jn = app.add_subcommand("join", "Join a source column to a target column");
  c_jn->add_option("--source", jn.source, "Source column CSV (header value)")->required();
  c_jn->add_option("--target", jn.target, "Target column CSV (header value)")->required();
  c_jn->add_option("--examples", jn.examples, "Example pairs CSV (header source,target)")->required();
  c_jn->add_option("--backend", jn.backend, "synthesis | remote | ensemble")
      ->capture_default_str()
      ->check(CLI::IsMember({"synthesis", "remote", "ensemble"}));
  c_jn->add_option("--trials", jn.trials, "Trials per predictor")->capture_default_str();
  c_jn->add_option("--k", jn.k, "Examples per context")->capture_default_str();
  c_jn->add_option("--mode", jn.mode, "one-to-one | bounded")
      ->capture_default_str()
      ->check(CLI::IsMember({"one-to-one", "bounded"}));
  c_jn->add_option("--min-dist", jn.min_dist, "Bounded mode: minimum edit distance");
  c_jn->add_option("--max-dist", jn.max_dist, "Bounded mode: maximum edit distance");
  c_jn->add_option("--threads", jn.threads, "Rows processed in parallel")->capture_default_str();
  c_jn->add_option("--seed", jn.seed, "RNG seed (random if omitted)");
  c_jn->add_option("--max-chains", jn.max_chains, "Synthesis: maximum chains")->capture_default_str();
  c_jn->add_option("--max-candidates", jn.max_candidates, "Synthesis: candidate budget")->capture_default_str();
  c_jn->add_option("--time-budget-ms", jn.time_budget_ms, "Synthesis: wall-clock guard")->capture_default_str();
  c_jn->add_option("--endpoint", jn.endpoint, "Remote: completion URL");
  c_jn->add_option("--auth-env", jn.auth_env, "Remote: env var holding the bearer token");
  c_jn->add_option("--temperature", jn.temperature, "Remote: sampling temperature")->capture_default_str();
  c_jn->add_option("--max-tokens", jn.max_tokens, "Remote: completion length")->capture_default_str();
  c_jn->add_option("--timeout-ms", jn.timeout_ms, "Remote: per-request timeout")->capture_default_str();
  c_jn->add_option("--retries", jn.retries, "Remote: retries per request")->capture_default_str();
  c_jn->add_option("--max-in-flight", jn.max_in_flight, "Remote: concurrent requests")->capture_default_str();
  c_jn->add_option("--out", jn.out, "Output directory")->required();

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Score matches against ground truth (JSON)");
  c_ev->add_option("--pred", ev.pred, "matches.csv from join");
  c_ev->add_option("--truth", ev.truth, "Ground-truth column CSV (header value)");
  c_ev->add_option("--dataset", ev.dataset, "Directory of table directories to average over");
  c_ev->add_option("--pred-name", ev.pred_name, "Dataset mode: matches file name")->capture_default_str();
  c_ev->add_option("--truth-name", ev.truth_name, "Dataset mode: truth file name")->capture_default_str();
  c_ev->add_option("--out", ev.out, "Write the report here instead of stdout");

  NoiseArgs ns;
  auto* c_ns = app.add_subcommand("noise", "Replace a fraction of example targets with random text");
  c_ns->add_option("--examples", ns.examples, "Example pairs CSV")->required();
  c_ns->add_option("--ratio", ns.ratio, "Fraction of pairs to poison, in [0, 1]")->required();
  c_ns->add_option("--seed", ns.seed, "RNG seed (random if omitted)");
  c_ns->add_option("--out", ns.out, "Output directory")->required();

  ReplayArgs rp;
  auto* c_rp = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  c_rp->add_option("--manifest", rp.manifest, "manifest.json")->required();
  c_rp->add_option("--out", rp.out, "Override the output directory");

  std::vector<const char*> argv{"tabxform"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Manifest m(app.get_subcommands().front()->get_name(), args);
    if (c_gt->parsed()) return GenTrain(gt, m);
    if (c_gb->parsed()) return GenBench(gb, m);
    if (c_sp->parsed()) return Split(sp, m);
    if (c_jn->parsed()) return Join(jn, m);
    if (c_ev->parsed()) return Eval(ev);
    if (c_ns->parsed()) return Noise(ns, m);
    if (c_rp->parsed()) return Replay(rp);
  } catch (const Failure& f) {
    return ExitCode(f.status);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "tabxform: io: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  return Run(std::vector<std::string>(argv + 1, argv + argc));
}

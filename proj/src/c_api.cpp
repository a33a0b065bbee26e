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


#include "tabxform/tabxform.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "json.hpp"

#include "tabxform/core.hpp"
#include "tabxform/datagen.hpp"
#include "tabxform/eval.hpp"
#include "tabxform/grammar.hpp"
#include "tabxform/io.hpp"
#include "tabxform/joiner.hpp"
#include "tabxform/predictor.hpp"
#include "tabxform/synthesis.hpp"

#ifndef TABXFORM_VERSION
#define TABXFORM_VERSION "0.0.0"
#endif

struct tx_predictor {
  tabxform::PredictorSpec spec;
  std::unique_ptr<tabxform::Predictor> impl;
};

namespace {

namespace fs = std::filesystem;
using namespace tabxform;

thread_local std::string g_last_error;

tx_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMarkerCollision: return TX_ERR_MARKER_COLLISION;
    case ErrorCode::kInvalidUtf8: return TX_ERR_INVALID_UTF8;
    case ErrorCode::kTooFewRows: return TX_ERR_TOO_FEW_ROWS;
    case ErrorCode::kEmptyExampleSet: return TX_ERR_EMPTY_EXAMPLE_SET;
    case ErrorCode::kDuplicateExample: return TX_ERR_DUPLICATE_EXAMPLE;
    case ErrorCode::kInsufficientExamples: return TX_ERR_INSUFFICIENT_EXAMPLES;
    case ErrorCode::kConfig: return TX_ERR_CONFIG;
    case ErrorCode::kParse: return TX_ERR_PARSE;
    case ErrorCode::kRemote: return TX_ERR_REMOTE;
    case ErrorCode::kOversizePrompt: return TX_ERR_OVERSIZE_PROMPT;
    case ErrorCode::kEmptyTargetTable: return TX_ERR_EMPTY_TARGET_TABLE;
    case ErrorCode::kLengthMismatch: return TX_ERR_LENGTH_MISMATCH;
    case ErrorCode::kEmptyDataset: return TX_ERR_EMPTY_DATASET;
    case ErrorCode::kIo: return TX_ERR_IO;
  }
  return TX_ERR_INTERNAL;
}

tx_status Fail(tx_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
tx_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const Error& e) {
    return Fail(StatusOf(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(TX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TX_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(TX_ERR_INTERNAL, "unknown failure");
  }
}

void Require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kConfig, std::string(what) + " must not be NULL");
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SynthesisConfig ToConfig(const tx_synthesis_options& o) {
  SynthesisConfig cfg;
  cfg.grammar.max_chains = o.max_chains;
  cfg.max_candidates = o.max_candidates;
  cfg.time_budget = std::chrono::milliseconds(o.time_budget_ms);
  return cfg;
}

RemoteLlmConfig ToConfig(const tx_remote_options& o) {
  RemoteLlmConfig cfg;
  if (o.endpoint) cfg.endpoint = o.endpoint;
  if (o.auth_env) cfg.auth_env = o.auth_env;
  cfg.temperature = o.temperature;
  cfg.max_tokens = o.max_tokens;
  cfg.max_prompt_bytes = o.max_prompt_bytes;
  cfg.timeout = std::chrono::milliseconds(o.timeout_ms);
  cfg.retries = o.retries;
  cfg.max_in_flight = o.max_in_flight;
  return cfg;
}

std::optional<std::size_t> Bound(int64_t v) {
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

void WriteMatches(const fs::path& path, const JoinReport& report,
                  const std::vector<CellValue>& targets) {
  std::vector<CsvRow> rows{{"source", "predicted", "matched", "distance", "support", "trials"}};
  for (const auto& r : report.rows) {
    const std::string pred = r.predicted ? r.predicted->utf8() : "";
    const std::string support = std::to_string(r.support);
    const std::string trials = std::to_string(r.trials);
    if (r.matches.empty()) {
      rows.push_back({r.source.utf8(), pred, "", "", support, trials});
    }
    for (const auto& m : r.matches) {
      rows.push_back({r.source.utf8(), pred, targets[m.index].utf8(),
                      std::to_string(m.distance), support, trials});
    }
  }
  WriteFile(path, FormatCsv(rows));
}

MetricsReport EvalTable(const fs::path& matches, const fs::path& truth_csv) {
  std::vector<RowOutcome> rows;
  for (const auto& f : ReadCsvColumns(matches, {"predicted", "matched", "distance"})) {
    RowOutcome row;
    const bool matched = !f[2].empty();
    // A present "" prediction and an absent one score the same.
    if (matched || !f[0].empty()) row.predicted = ValidateCell(f[0]);
    if (matched) row.matched = ValidateCell(f[1]);
    rows.push_back(std::move(row));
  }
  const auto truth = ReadColumnCsv(truth_csv);
  return ScoreTable(rows, truth);
}

}  // namespace

extern "C" {

const char* tx_version(void) { return TABXFORM_VERSION; }

const char* tx_status_name(tx_status status) {
  switch (status) {
    case TX_OK: return "ok";
    case TX_ERR_CONFIG: return "config";
    case TX_ERR_PARSE: return "parse";
    case TX_ERR_INVALID_UTF8: return "invalid-utf8";
    case TX_ERR_MARKER_COLLISION: return "marker-collision";
    case TX_ERR_TOO_FEW_ROWS: return "too-few-rows";
    case TX_ERR_EMPTY_EXAMPLE_SET: return "empty-example-set";
    case TX_ERR_DUPLICATE_EXAMPLE: return "duplicate-example";
    case TX_ERR_INSUFFICIENT_EXAMPLES: return "insufficient-examples";
    case TX_ERR_OVERSIZE_PROMPT: return "oversize-prompt";
    case TX_ERR_EMPTY_TARGET_TABLE: return "empty-target-table";
    case TX_ERR_LENGTH_MISMATCH: return "length-mismatch";
    case TX_ERR_EMPTY_DATASET: return "empty-dataset";
    case TX_ERR_IO: return "io";
    case TX_ERR_REMOTE: return "remote";
    case TX_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* tx_last_error(void) { return g_last_error.c_str(); }

void tx_string_free(char* s) { std::free(s); }

tx_status tx_apply(const char* program, const char* input, char** out) {
  return Guard([&] {
    Require(program, "program");
    Require(input, "input");
    Require(out, "out");
    const Transformation t = ParseTransformation(program);
    *out = Dup(ApplyTransformation(t, ValidateCell(input)).utf8());
    return TX_OK;
  });
}

tx_status tx_synthesize(const char* const* sources, const char* const* targets,
                        size_t n, char** program) {
  return Guard([&] {
    Require(program, "program");
    if (n > 0) {
      Require(sources, "sources");
      Require(targets, "targets");
    }
    std::vector<ExamplePair> pairs;
    for (size_t i = 0; i < n; ++i) {
      Require(sources[i], "source");
      Require(targets[i], "target");
      pairs.push_back({ValidateCell(sources[i]), ValidateCell(targets[i])});
    }
    const ExampleSet set(pairs);  // rejects empty and duplicate input
    const auto t = SynthesizeTransformation(Context(set.pairs()), SynthesisConfig{});
    *program = t ? Dup(ToText(*t)) : nullptr;
    return TX_OK;
  });
}

void tx_synthesis_options_init(tx_synthesis_options* opts) {
  if (!opts) return;
  const SynthesisConfig d;
  opts->max_chains = d.grammar.max_chains;
  opts->max_candidates = d.max_candidates;
  opts->time_budget_ms = d.time_budget.count();
}

void tx_remote_options_init(tx_remote_options* opts) {
  if (!opts) return;
  const RemoteLlmConfig d;
  opts->endpoint = nullptr;
  opts->auth_env = nullptr;
  opts->temperature = d.temperature;
  opts->max_tokens = d.max_tokens;
  opts->max_prompt_bytes = d.max_prompt_bytes;
  opts->timeout_ms = d.timeout.count();
  opts->retries = d.retries;
  opts->max_in_flight = d.max_in_flight;
}

tx_status tx_predictor_new_synthesis(const tx_synthesis_options* opts,
                                     tx_predictor** out) {
  return Guard([&] {
    Require(out, "out");
    tx_synthesis_options o;
    tx_synthesis_options_init(&o);
    if (opts) o = *opts;
    auto p = std::make_unique<tx_predictor>();
    p->spec = ToConfig(o);
    p->impl = MakePredictor(p->spec);
    *out = p.release();
    return TX_OK;
  });
}

tx_status tx_predictor_new_remote(const tx_remote_options* opts, tx_predictor** out) {
  return Guard([&] {
    Require(opts, "options");
    Require(out, "out");
    auto p = std::make_unique<tx_predictor>();
    p->spec = ToConfig(*opts);
    p->impl = MakePredictor(p->spec);
    *out = p.release();
    return TX_OK;
  });
}

tx_status tx_predictor_new_ensemble(const tx_predictor* const* members, size_t n,
                                    tx_predictor** out) {
  return Guard([&] {
    Require(out, "out");
    if (n > 0) Require(members, "members");
    EnsembleSpec spec;
    for (size_t i = 0; i < n; ++i) {
      Require(members[i], "member");
      if (const auto* s = std::get_if<SynthesisConfig>(&members[i]->spec)) {
        spec.members.emplace_back(*s);
      } else if (const auto* r = std::get_if<RemoteLlmConfig>(&members[i]->spec)) {
        spec.members.emplace_back(*r);
      } else {
        throw Error(ErrorCode::kConfig, "ensembles cannot be nested");
      }
    }
    auto p = std::make_unique<tx_predictor>();
    p->spec = spec;
    p->impl = MakePredictor(p->spec);
    *out = p.release();
    return TX_OK;
  });
}

void tx_predictor_free(tx_predictor* p) { delete p; }

void tx_join_options_init(tx_join_options* opts) {
  if (!opts) return;
  const JoinConfig d;
  opts->mode = TX_JOIN_ONE_TO_ONE;
  opts->min_distance = -1;
  opts->max_distance = -1;
  opts->k = d.context_size;
  opts->trials = d.trials;
  opts->threads = d.threads;
  opts->seed = 0;
}

tx_status tx_join_files(const char* source_csv, const char* target_csv,
                        const char* examples_csv, const tx_predictor* predictor,
                        const tx_join_options* opts, const char* out_csv,
                        tx_join_summary* summary) {
  return Guard([&] {
    Require(source_csv, "source path");
    Require(target_csv, "target path");
    Require(examples_csv, "examples path");
    Require(predictor, "predictor");
    Require(out_csv, "output path");
    tx_join_options o;
    tx_join_options_init(&o);
    if (opts) o = *opts;

    JoinConfig cfg;
    cfg.mode = o.mode == TX_JOIN_BOUNDED ? JoinMode::kBounded : JoinMode::kOneToOne;
    cfg.min_distance = Bound(o.min_distance);
    cfg.max_distance = Bound(o.max_distance);
    cfg.context_size = o.k;
    cfg.trials = o.trials;
    cfg.threads = o.threads;
    cfg.Validate();

    const auto sources = ReadColumnCsv(source_csv);
    const auto targets = ReadColumnCsv(target_csv);
    const auto examples = ReadExamplesCsv(examples_csv);
    const JoinReport report = Join(sources, targets, examples,
                                   {predictor->impl.get()}, cfg, Seed{o.seed});
    WriteMatches(out_csv, report, targets);

    if (summary) {
      *summary = {};
      summary->rows = report.rows.size();
      for (const auto& r : report.rows) {
        if (r.predicted) ++summary->predicted_rows;
        if (!r.matches.empty()) ++summary->matched_rows;
      }
      summary->failed_rows = report.failed_rows;
      summary->trials = report.diagnostics.trials;
      summary->failed_trials = report.diagnostics.failed;
    }
    if (!report.rows.empty() && report.failed_rows == report.rows.size()) {
      return Fail(TX_ERR_REMOTE, "every row failed remotely; last error: " +
                                     report.diagnostics.last_error);
    }
    return TX_OK;
  });
}

void tx_train_options_init(tx_train_options* opts) {
  if (!opts) return;
  const TrainingCorpusConfig d;
  opts->groupings = d.groupings;
  opts->pairs = d.pairs_per_grouping;
  opts->subsets = d.subsets_per_grouping;
  opts->len_min = d.len_range.lo;
  opts->len_max = d.len_range.hi;
  opts->seed = 0;
}

tx_status tx_gen_train(const tx_train_options* opts, const char* out_jsonl,
                       size_t* samples, size_t* train_samples) {
  return Guard([&] {
    Require(opts, "options");
    Require(out_jsonl, "output path");
    TrainingCorpusConfig cfg;
    cfg.groupings = opts->groupings;
    cfg.pairs_per_grouping = opts->pairs;
    cfg.subsets_per_grouping = opts->subsets;
    cfg.len_range = {opts->len_min, opts->len_max};
    cfg.seed = Seed{opts->seed};
    cfg.Validate();

    const fs::path path(out_jsonl);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
    size_t n = 0, train = 0;
    GenerateTrainingCorpus(cfg, [&](const TrainingSample& s) {
      out << ToJsonLine(s) << '\n';
      ++n;
      if (s.train) ++train;
    });
    out.close();
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    if (samples) *samples = n;
    if (train_samples) *train_samples = train;
    return TX_OK;
  });
}

tx_status tx_bench_options_init(tx_bench_options* opts, const char* kind) {
  return Guard([&] {
    Require(opts, "options");
    Require(kind, "kind");
    const auto k = ParseBenchmarkKind(kind);
    if (!k) throw Error(ErrorCode::kConfig, std::string("unknown benchmark kind '") + kind + "'");
    const auto d = BenchmarkSpec::Defaults(*k);
    opts->kind = BenchmarkKindName(*k);
    opts->tables = d.tables;
    opts->rows = d.rows;
    opts->len_min = d.len_range.lo;
    opts->len_max = d.len_range.hi;
    opts->seed = 0;
    return TX_OK;
  });
}

tx_status tx_gen_bench(const tx_bench_options* opts, const char* out_dir) {
  return Guard([&] {
    Require(opts, "options");
    Require(opts->kind, "kind");
    Require(out_dir, "output directory");
    const auto kind = ParseBenchmarkKind(opts->kind);
    if (!kind) {
      throw Error(ErrorCode::kConfig, std::string("unknown benchmark kind '") + opts->kind + "'");
    }
    BenchmarkSpec spec = BenchmarkSpec::Defaults(*kind);
    spec.tables = opts->tables;
    spec.rows = opts->rows;
    spec.len_range = {opts->len_min, opts->len_max};
    spec.seed = Seed{opts->seed};
    spec.Validate();

    for (size_t i = 0; i < spec.tables; ++i) {
      const GeneratedTable t = GenerateTable(spec, i);
      char name[32];
      std::snprintf(name, sizeof name, "table%03zu", i);
      const fs::path dir = fs::path(out_dir) / name;
      WriteColumnCsv(dir / "source.csv", t.pair.source_rows);
      WriteColumnCsv(dir / "target.csv", t.pair.target_rows);
      nlohmann::ordered_json meta;
      meta["kind"] = BenchmarkKindName(spec.kind);
      meta["seed"] = spec.seed.value;
      meta["table"] = i;
      meta["rows"] = spec.rows;
      meta["len_min"] = spec.len_range.lo;
      meta["len_max"] = spec.len_range.hi;
      meta["transformation"] = t.transformation
                                   ? nlohmann::ordered_json(ToText(*t.transformation))
                                   : nlohmann::ordered_json(nullptr);
      meta["description"] = t.description;
      WriteFile(dir / "meta.json", meta.dump(2) + "\n");
    }
    return TX_OK;
  });
}

tx_status tx_noise_file(const char* examples_csv, double ratio, uint64_t seed,
                        const char* out_csv, size_t* replaced) {
  return Guard([&] {
    Require(examples_csv, "examples path");
    Require(out_csv, "output path");
    const auto examples = ReadExamplesCsv(examples_csv);
    const NoiseResult r = InjectNoise(examples, NoiseSpec{ratio, Seed{seed}});
    WriteExamplesCsv(out_csv, r.examples);
    if (replaced) *replaced = r.replaced.size();
    return TX_OK;
  });
}

tx_status tx_split_table(const char* table_dir, const char* out_dir,
                         size_t* examples, size_t* held_out) {
  return Guard([&] {
    Require(table_dir, "table directory");
    Require(out_dir, "output directory");
    TablePair table;
    table.source_rows = ReadColumnCsv(fs::path(table_dir) / "source.csv");
    table.target_rows = ReadColumnCsv(fs::path(table_dir) / "target.csv");
    table.aligned = table.source_rows.size() == table.target_rows.size();
    const auto [set, rest] = SplitExamples(table);
    const fs::path out(out_dir);
    WriteExamplesCsv(out / "examples.csv", set);
    WriteColumnCsv(out / "source.csv", rest.source_rows);
    WriteColumnCsv(out / "target.csv", rest.target_rows);
    WriteColumnCsv(out / "truth.csv", rest.target_rows);
    if (examples) *examples = set.size();
    if (held_out) *held_out = rest.rows();
    return TX_OK;
  });
}

tx_status tx_eval_table(const char* matches_csv, const char* truth_csv, char** json) {
  return Guard([&] {
    Require(matches_csv, "matches path");
    Require(truth_csv, "truth path");
    Require(json, "json");
    *json = Dup(ToJson(EvalTable(matches_csv, truth_csv)));
    return TX_OK;
  });
}

tx_status tx_eval_dataset(const char* dir, const char* matches_name,
                          const char* truth_name, char** json) {
  return Guard([&] {
    Require(dir, "dataset directory");
    Require(json, "json");
    const std::string m = matches_name ? matches_name : "matches.csv";
    const std::string t = truth_name ? truth_name : "truth.csv";
    if (!fs::is_directory(dir)) {
      throw Error(ErrorCode::kIo, std::string("not a directory: ") + dir);
    }
    std::vector<fs::path> tables;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_directory() && fs::exists(entry.path() / m) &&
          fs::exists(entry.path() / t)) {
        tables.push_back(entry.path());
      }
    }
    std::sort(tables.begin(), tables.end());
    std::vector<MetricsReport> reports;
    for (const auto& p : tables) reports.push_back(EvalTable(p / m, p / t));
    *json = Dup(ToJson(ScoreDataset(reports)));
    return TX_OK;
  });
}

tx_status tx_sha256_file(const char* path, char** hex) {
  return Guard([&] {
    Require(path, "path");
    Require(hex, "hex");
    *hex = Dup(Sha256File(path));
    return TX_OK;
  });
}

}  // extern "C"

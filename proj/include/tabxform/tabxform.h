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


/* C interface to libtabxform. Every function returns a tx_status; on
 * failure tx_last_error() describes the problem for the calling thread.
 * Strings are UTF-8. Strings returned through char** are owned by the
 * caller and released with tx_string_free. */

#ifndef TABXFORM_TABXFORM_H_
#define TABXFORM_TABXFORM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TX_API __declspec(dllexport)
#else
#define TX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tx_status {
  TX_OK = 0,
  TX_ERR_CONFIG = 1,
  TX_ERR_PARSE = 2,
  TX_ERR_INVALID_UTF8 = 3,
  TX_ERR_MARKER_COLLISION = 4,
  TX_ERR_TOO_FEW_ROWS = 5,
  TX_ERR_EMPTY_EXAMPLE_SET = 6,
  TX_ERR_DUPLICATE_EXAMPLE = 7,
  TX_ERR_INSUFFICIENT_EXAMPLES = 8,
  TX_ERR_OVERSIZE_PROMPT = 9,
  TX_ERR_EMPTY_TARGET_TABLE = 10,
  TX_ERR_LENGTH_MISMATCH = 11,
  TX_ERR_EMPTY_DATASET = 12,
  TX_ERR_IO = 13,
  TX_ERR_REMOTE = 14,
  TX_ERR_INTERNAL = 15
} tx_status;

TX_API const char* tx_version(void);
TX_API const char* tx_status_name(tx_status status);
/* Message for the last failing call on this thread; "" if none. */
TX_API const char* tx_last_error(void);
TX_API void tx_string_free(char* s);

/* ---- Programs ---------------------------------------------------------- */

/* Runs a program in text form on one input. */
TX_API tx_status tx_apply(const char* program, const char* input, char** out);

/* Smallest program consistent with the n example pairs. *program is set to
 * NULL when none exists within the default budgets. */
TX_API tx_status tx_synthesize(const char* const* sources,
                               const char* const* targets, size_t n,
                               char** program);

/* ---- Predictors -------------------------------------------------------- */

typedef struct tx_predictor tx_predictor;

typedef struct tx_synthesis_options {
  size_t max_chains;     /* default 6 */
  size_t max_candidates; /* default 200000 */
  int64_t time_budget_ms; /* default 2000 */
} tx_synthesis_options;

typedef struct tx_remote_options {
  const char* endpoint; /* http://host:port/path */
  const char* auth_env; /* environment variable holding the bearer token */
  double temperature;   /* default 0 */
  size_t max_tokens;    /* default 64 */
  size_t max_prompt_bytes; /* default 8192 */
  int64_t timeout_ms;   /* default 10000 */
  int retries;          /* default 2 */
  size_t max_in_flight; /* default 4 */
} tx_remote_options;

TX_API void tx_synthesis_options_init(tx_synthesis_options* opts);
TX_API void tx_remote_options_init(tx_remote_options* opts);

TX_API tx_status tx_predictor_new_synthesis(const tx_synthesis_options* opts,
                                            tx_predictor** out);
/* Fails with TX_ERR_CONFIG if the token variable is unset. */
TX_API tx_status tx_predictor_new_remote(const tx_remote_options* opts,
                                         tx_predictor** out);
/* Copies the members' configurations; the members stay owned by the caller.
 * Needs at least two non-ensemble members. */
TX_API tx_status tx_predictor_new_ensemble(const tx_predictor* const* members,
                                           size_t n, tx_predictor** out);
TX_API void tx_predictor_free(tx_predictor* p);

/* ---- Joining ----------------------------------------------------------- */

typedef enum tx_join_mode { TX_JOIN_ONE_TO_ONE = 0, TX_JOIN_BOUNDED = 1 } tx_join_mode;

typedef struct tx_join_options {
  tx_join_mode mode;
  int64_t min_distance; /* -1: unset */
  int64_t max_distance; /* -1: unset */
  size_t k;             /* examples per context, default 2 */
  size_t trials;        /* per predictor, default 5 */
  size_t threads;       /* default 1 */
  uint64_t seed;
} tx_join_options;

typedef struct tx_join_summary {
  size_t rows;
  size_t predicted_rows;
  size_t matched_rows;
  size_t failed_rows; /* every trial failed remotely */
  size_t trials;
  size_t failed_trials;
} tx_join_summary;

TX_API void tx_join_options_init(tx_join_options* opts);

/* Joins source.csv (header value) to target.csv (header value) using the
 * example pairs in examples.csv (header source,target) and writes
 * matches.csv with columns source,predicted,matched,distance,support,trials.
 * Returns TX_ERR_REMOTE, after writing the output, when every row failed
 * remotely. `summary` may be NULL. */
TX_API tx_status tx_join_files(const char* source_csv, const char* target_csv,
                               const char* examples_csv,
                               const tx_predictor* predictor,
                               const tx_join_options* opts,
                               const char* out_csv, tx_join_summary* summary);

/* ---- Data generation --------------------------------------------------- */

typedef struct tx_train_options {
  size_t groupings; /* default 2000 */
  size_t pairs;     /* default 10 */
  size_t subsets;   /* default 10 */
  int64_t len_min;  /* default 8 */
  int64_t len_max;  /* default 35 */
  uint64_t seed;
} tx_train_options;

TX_API void tx_train_options_init(tx_train_options* opts);
/* Writes one JSON object per line. Either count pointer may be NULL. */
TX_API tx_status tx_gen_train(const tx_train_options* opts, const char* out_jsonl,
                              size_t* samples, size_t* train_samples);

typedef struct tx_bench_options {
  const char* kind; /* syn | syn-rp | syn-st | syn-rv */
  size_t tables;
  size_t rows;
  int64_t len_min;
  int64_t len_max;
  uint64_t seed;
} tx_bench_options;

/* Fills the defaults for `kind` (10 x 100 for syn, 5 x 50 otherwise). */
TX_API tx_status tx_bench_options_init(tx_bench_options* opts, const char* kind);
/* Writes out_dir/tableNNN/{source.csv,target.csv,meta.json}. */
TX_API tx_status tx_gen_bench(const tx_bench_options* opts, const char* out_dir);

/* Replaces round-half-even(ratio * n) targets with random text. */
TX_API tx_status tx_noise_file(const char* examples_csv, double ratio,
                               uint64_t seed, const char* out_csv,
                               size_t* replaced);

/* Splits an aligned table directory (source.csv, target.csv) into
 * examples.csv (first ceil(n/2) rows) and the held-out source.csv,
 * target.csv and truth.csv under out_dir. */
TX_API tx_status tx_split_table(const char* table_dir, const char* out_dir,
                                size_t* examples, size_t* held_out);

/* ---- Evaluation -------------------------------------------------------- */

/* MetricsReport JSON for a matches.csv against a truth column. */
TX_API tx_status tx_eval_table(const char* matches_csv, const char* truth_csv,
                               char** json);
/* DatasetReport JSON over every subdirectory of `dir` (sorted by name) that
 * holds both `matches_name` and `truth_name`. */
TX_API tx_status tx_eval_dataset(const char* dir, const char* matches_name,
                                 const char* truth_name, char** json);

/* ---- Utilities --------------------------------------------------------- */

TX_API tx_status tx_sha256_file(const char* path, char** hex);

#ifdef __cplusplus
}
#endif

#endif /* TABXFORM_TABXFORM_H_ */

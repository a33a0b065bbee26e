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


// Seeded generators for the synthetic training corpus, the benchmark table
// pairs and noise-poisoned example sets. Every item draws from a child seed
// derived from (seed, index), so outputs do not depend on generation order.

#ifndef TABXFORM_DATAGEN_HPP_
#define TABXFORM_DATAGEN_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabxform/core.hpp"
#include "tabxform/grammar.hpp"
#include "tabxform/serializer.hpp"

namespace tabxform {

struct Grouping {
  Transformation transformation;
  std::vector<ExamplePair> pairs;
};

struct TrainingSample {
  Prompt prompt;
  LabelText label;
  bool train = true;
  std::size_t grouping_id = 0;
  std::string transformation;  // canonical text form
};

struct TrainingCorpusConfig {
  std::size_t groupings = 2000;
  std::size_t pairs_per_grouping = 10;
  std::size_t subsets_per_grouping = 10;
  IntRange len_range{8, 35};
  GrammarConfig grammar;
  // Whole groupings are held out, so no transformation straddles the split.
  double validation_fraction = 0.2;
  Seed seed;

  void Validate() const;
};

// One grouping of `pairs` random distinct sources under a random program
// with chain count uniform in [1, max_chains].
Grouping MakeGrouping(Rng& rng, const GrammarConfig& grammar,
                      std::size_t pairs, IntRange len_range);

// Calls `sink` once per sample, in (grouping, subset) order.
void GenerateTrainingCorpus(const TrainingCorpusConfig& cfg,
                            const std::function<void(const TrainingSample&)>& sink);

// {"prompt","label","split","grouping_id","transformation"}, no newline.
std::string ToJsonLine(const TrainingSample& sample);

enum class BenchmarkKind { kSyn, kSynRp, kSynSt, kSynRv };

std::optional<BenchmarkKind> ParseBenchmarkKind(std::string_view name);
const char* BenchmarkKindName(BenchmarkKind kind);

struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::kSyn;
  std::size_t tables = 10;
  std::size_t rows = 100;
  IntRange len_range{8, 35};
  Seed seed;
  GrammarConfig grammar;
  IntRange syn_chains{3, 6};  // chain count range for kSyn

  // Table and row defaults for a kind: 10 x 100 for syn, 5 x 50 otherwise.
  static BenchmarkSpec Defaults(BenchmarkKind kind);
  void Validate() const;
};

struct GeneratedTable {
  TablePair pair;
  // The generating program (syn, syn-st), or a description (syn-rp, syn-rv).
  std::optional<Transformation> transformation;
  std::string description;
};

GeneratedTable GenerateTable(const BenchmarkSpec& spec, std::size_t index);
std::vector<GeneratedTable> GenerateBenchmark(const BenchmarkSpec& spec);

struct NoiseSpec {
  double ratio = 0.0;
  Seed seed;
};

struct NoiseResult {
  ExampleSet examples;
  std::vector<std::size_t> replaced;  // ascending pair indices
};

// Replaces round-half-even(ratio * |E|) targets, chosen uniformly without
// replacement, by random text of the original target's length.
NoiseResult InjectNoise(const ExampleSet& examples, const NoiseSpec& spec,
                        std::u32string_view alphabet = DefaultAlphabet());

}  // namespace tabxform

#endif  // TABXFORM_DATAGEN_HPP_

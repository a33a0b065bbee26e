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


#include "tabxform/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace tabxform {

namespace {

// Cap on redraws when looking for a fresh random source.
constexpr std::size_t kMaxRedraws = 100000;

[[noreturn]] void Invalid(const std::string& msg) {
  throw Error(ErrorCode::kConfig, msg);
}

void CheckLengthRange(IntRange r) {
  if (r.lo < 1 || r.hi < r.lo || r.hi > 10000) {
    Invalid("length range must satisfy 1 <= min <= max <= 10000");
  }
}

// `n` random sources with distinct texts, each accepted by `keep`.
template <class Keep>
std::vector<CellValue> DistinctSources(Rng& rng, std::size_t n, IntRange len,
                                       std::u32string_view alphabet, Keep keep) {
  std::vector<CellValue> out;
  std::unordered_set<CellValue> seen;
  std::size_t redraws = 0;
  while (out.size() < n) {
    CellValue s = RandomSource(rng, len, alphabet);
    if (keep(s) && seen.insert(s).second) {
      out.push_back(std::move(s));
    } else if (++redraws > kMaxRedraws) {
      Invalid("cannot draw " + std::to_string(n) +
              " distinct sources in the requested length range");
    }
  }
  return out;
}

std::vector<CellValue> DistinctSources(Rng& rng, std::size_t n, IntRange len,
                                       std::u32string_view alphabet) {
  return DistinctSources(rng, n, len, alphabet, [](const CellValue&) { return true; });
}

}  // namespace

void TrainingCorpusConfig::Validate() const {
  grammar.Validate();
  if (groupings < 1) Invalid("groupings must be >= 1");
  if (pairs_per_grouping < 3) Invalid("pairs per grouping must be >= 3");
  if (subsets_per_grouping < 1) Invalid("subsets per grouping must be >= 1");
  if (!(validation_fraction >= 0.0 && validation_fraction <= 1.0)) {
    Invalid("validation fraction must lie in [0, 1]");
  }
  CheckLengthRange(len_range);
}

Grouping MakeGrouping(Rng& rng, const GrammarConfig& grammar,
                      std::size_t pairs, IntRange len_range) {
  Transformation t = RandomTransformation(
      rng, grammar, {1, static_cast<std::int64_t>(grammar.max_chains)});
  std::vector<ExamplePair> out;
  for (auto& s : DistinctSources(rng, pairs, len_range, DefaultAlphabet())) {
    CellValue target = ApplyTransformation(t, s);
    out.push_back({std::move(s), std::move(target)});
  }
  return {std::move(t), std::move(out)};
}

void GenerateTrainingCorpus(const TrainingCorpusConfig& cfg,
                            const std::function<void(const TrainingSample&)>& sink) {
  cfg.Validate();
  // Hold out a seeded choice of whole groupings.
  const auto held_out = static_cast<std::size_t>(std::nearbyint(
      cfg.validation_fraction * static_cast<double>(cfg.groupings)));
  std::vector<std::size_t> order(cfg.groupings);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng(Rng::Derive(cfg.seed, {0}));
  for (std::size_t i = 0; i < held_out; ++i) {
    std::swap(order[i], order[i + split_rng.Below(order.size() - i)]);
  }
  std::vector<bool> validation(cfg.groupings, false);
  for (std::size_t i = 0; i < held_out; ++i) validation[order[i]] = true;

  for (std::size_t g = 0; g < cfg.groupings; ++g) {
    Rng rng(Rng::Derive(cfg.seed, {1, g}));
    Grouping grouping = MakeGrouping(rng, cfg.grammar, cfg.pairs_per_grouping,
                                     cfg.len_range);
    const ExampleSet set(grouping.pairs);
    const std::string program = ToText(grouping.transformation);
    for (const Context& c : SampleContexts(set, 3, cfg.subsets_per_grouping, rng)) {
      // The last pair of the canonical triple is the masked one.
      const ExamplePair& masked = c[2];
      TrainingSample sample;
      sample.prompt = Serialize(Context({c[0], c[1]}), masked.source);
      sample.label = SerializeLabel(masked.target);
      sample.train = !validation[g];
      sample.grouping_id = g;
      sample.transformation = program;
      sink(sample);
    }
  }
}

std::string ToJsonLine(const TrainingSample& sample) {
  nlohmann::ordered_json j;
  j["prompt"] = sample.prompt.text;
  j["label"] = sample.label.text;
  j["split"] = sample.train ? "train" : "validation";
  j["grouping_id"] = sample.grouping_id;
  j["transformation"] = sample.transformation;
  return j.dump();
}

std::optional<BenchmarkKind> ParseBenchmarkKind(std::string_view name) {
  if (name == "syn") return BenchmarkKind::kSyn;
  if (name == "syn-rp") return BenchmarkKind::kSynRp;
  if (name == "syn-st") return BenchmarkKind::kSynSt;
  if (name == "syn-rv") return BenchmarkKind::kSynRv;
  return std::nullopt;
}

const char* BenchmarkKindName(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::kSyn: return "syn";
    case BenchmarkKind::kSynRp: return "syn-rp";
    case BenchmarkKind::kSynSt: return "syn-st";
    case BenchmarkKind::kSynRv: return "syn-rv";
  }
  return "?";
}

BenchmarkSpec BenchmarkSpec::Defaults(BenchmarkKind kind) {
  BenchmarkSpec spec;
  spec.kind = kind;
  if (kind != BenchmarkKind::kSyn) {
    spec.tables = 5;
    spec.rows = 50;
  }
  return spec;
}

void BenchmarkSpec::Validate() const {
  grammar.Validate();
  if (tables < 1) Invalid("tables must be >= 1");
  if (rows < 2) Invalid("rows must be >= 2");
  CheckLengthRange(len_range);
  if (kind == BenchmarkKind::kSyn &&
      (syn_chains.lo < 1 || syn_chains.hi < syn_chains.lo ||
       syn_chains.hi > static_cast<std::int64_t>(grammar.max_chains))) {
    Invalid("chain count range must lie within [1, max_chains]");
  }
}

GeneratedTable GenerateTable(const BenchmarkSpec& spec, std::size_t index) {
  spec.Validate();
  Rng rng(Rng::Derive(spec.seed, {static_cast<std::uint64_t>(spec.kind), index}));
  const std::u32string alphabet = DefaultAlphabet();
  GeneratedTable out;
  auto& src = out.pair.source_rows;
  auto& tgt = out.pair.target_rows;

  switch (spec.kind) {
    case BenchmarkKind::kSyn: {
      Transformation t = RandomTransformation(rng, spec.grammar, spec.syn_chains);
      src = DistinctSources(rng, spec.rows, spec.len_range, alphabet);
      for (const auto& s : src) tgt.push_back(ApplyTransformation(t, s));
      out.description = ToText(t);
      out.transformation = std::move(t);
      break;
    }
    case BenchmarkKind::kSynRp: {
      const char32_t from = alphabet[rng.Below(alphabet.size())];
      char32_t to = from;
      while (to == from) to = alphabet[rng.Below(alphabet.size())];
      src = DistinctSources(rng, spec.rows, spec.len_range, alphabet,
                            [&](const CellValue& s) {
                              return s.text().find(from) != std::u32string::npos;
                            });
      for (const auto& s : src) {
        std::u32string t = s.text();
        std::replace(t.begin(), t.end(), from, to);
        tgt.emplace_back(std::move(t));
      }
      out.description = "replace " + EncodeUtf8(std::u32string(1, from)) +
                        " with " + EncodeUtf8(std::u32string(1, to));
      break;
    }
    case BenchmarkKind::kSynSt: {
      // The window fits inside the shortest possible source.
      const auto shortest = static_cast<std::size_t>(spec.len_range.lo);
      const std::size_t start = rng.Below(shortest);
      const std::size_t end = start + 1 + rng.Below(shortest - start);
      Transformation t({UnitChain({Substr{start, end}})});
      src = DistinctSources(rng, spec.rows, spec.len_range, alphabet);
      for (const auto& s : src) tgt.push_back(ApplyTransformation(t, s));
      out.description = ToText(t);
      out.transformation = std::move(t);
      break;
    }
    case BenchmarkKind::kSynRv: {
      src = DistinctSources(rng, spec.rows, spec.len_range, alphabet);
      for (const auto& s : src) {
        tgt.emplace_back(std::u32string(s.text().rbegin(), s.text().rend()));
      }
      out.description = "reverse";
      break;
    }
  }
  out.pair.aligned = true;
  return out;
}

std::vector<GeneratedTable> GenerateBenchmark(const BenchmarkSpec& spec) {
  spec.Validate();
  std::vector<GeneratedTable> out;
  out.reserve(spec.tables);
  for (std::size_t i = 0; i < spec.tables; ++i) out.push_back(GenerateTable(spec, i));
  return out;
}

NoiseResult InjectNoise(const ExampleSet& examples, const NoiseSpec& spec,
                        std::u32string_view alphabet) {
  if (!(spec.ratio >= 0.0 && spec.ratio <= 1.0)) {
    Invalid("noise ratio must lie in [0, 1]");
  }
  const std::size_t n = examples.size();
  // nearbyint honours the default round-half-to-even mode.
  const auto count = static_cast<std::size_t>(
      std::nearbyint(spec.ratio * static_cast<double>(n)));

  Rng rng(spec.seed);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(idx[i], idx[i + rng.Below(n - i)]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());

  std::vector<ExamplePair> pairs = examples.pairs();
  std::set<ExamplePair> taken(pairs.begin(), pairs.end());
  for (std::size_t i : idx) {
    ExamplePair& p = pairs[i];
    // An empty target has no same-length replacement that differs from it.
    const auto len = static_cast<std::int64_t>(std::max<std::size_t>(p.target.size(), 1));
    for (std::size_t redraws = 0;; ++redraws) {
      if (redraws > kMaxRedraws) Invalid("cannot draw a distinct noisy target");
      ExamplePair fresh{p.source, RandomSource(rng, {len, len}, alphabet)};
      if (fresh.target == p.target || taken.count(fresh)) continue;
      taken.erase(p);
      taken.insert(fresh);
      p = std::move(fresh);
      break;
    }
  }
  return {ExampleSet(std::move(pairs)), std::move(idx)};
}

}  // namespace tabxform

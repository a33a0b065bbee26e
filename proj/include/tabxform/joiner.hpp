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

// Joining a source column to a differently formatted target column: predict
// each source row's target formatting, then pick the target row(s) at
// minimum (or bounded) edit distance.

#ifndef TABXFORM_JOINER_HPP_
#define TABXFORM_JOINER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tabxform/core.hpp"
#include "tabxform/predictor.hpp"

namespace tabxform {

// Unit-cost Levenshtein distance over Unicode scalar values.
std::size_t EditDistance(std::u32string_view a, std::u32string_view b);
inline std::size_t EditDistance(const CellValue& a, const CellValue& b) {
  return EditDistance(std::u32string_view(a.text()), std::u32string_view(b.text()));
}

struct Match {
  std::size_t index = 0;
  std::size_t distance = 0;
  friend bool operator==(const Match&, const Match&) = default;
};

// Closest target; ties go to the smaller target text, then the lower index.
Match BestMatch(const CellValue& predicted, std::span<const CellValue> targets);

// Every target with min_distance <= d <= max_distance, ordered by
// (distance, text, index).
std::vector<Match> BoundedMatches(const CellValue& predicted,
                                  std::span<const CellValue> targets,
                                  std::size_t min_distance,
                                  std::optional<std::size_t> max_distance);

enum class JoinMode { kOneToOne, kBounded };

struct JoinConfig {
  JoinMode mode = JoinMode::kOneToOne;
  std::optional<std::size_t> min_distance;
  std::optional<std::size_t> max_distance;
  std::size_t context_size = kDefaultContextSize;
  std::size_t trials = 5;  // per predictor
  std::size_t threads = 1;

  void Validate() const;
};

struct JoinResult {
  CellValue source;
  std::optional<CellValue> predicted;
  std::vector<Match> matches;
  JoinMode mode = JoinMode::kOneToOne;
  std::size_t support = 0;
  std::size_t trials = 0;
};

struct JoinReport {
  std::vector<JoinResult> rows;
  TrialDiagnostics diagnostics;
  // Rows where every trial failed with a remote error.
  std::size_t failed_rows = 0;
};

// Rows are processed independently (each with a child seed derived from
// `seed` and the row index) and returned in source order.
JoinReport Join(std::span<const CellValue> sources,
                std::span<const CellValue> targets, const ExampleSet& examples,
                const std::vector<const Predictor*>& predictors,
                const JoinConfig& cfg, Seed seed);

}  // namespace tabxform

#endif  // TABXFORM_JOINER_HPP_

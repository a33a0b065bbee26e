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


// Join quality metrics: precision, recall, F1, and average (normalized)
// edit distance of predictions against ground truth.

#ifndef TABXFORM_EVAL_HPP_
#define TABXFORM_EVAL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tabxform/core.hpp"
#include "tabxform/joiner.hpp"

namespace tabxform {

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double aed = 0.0;
  double aned = 0.0;
  std::size_t rows = 0;
  std::size_t predicted_rows = 0;
  std::size_t correct_rows = 0;
};

struct DatasetReport {
  std::vector<MetricsReport> tables;
  // Unweighted mean of every field (counts are averaged too).
  MetricsReport mean;
};

// What one joined row produced: the aggregated prediction and the text of
// the matched target, if any.
struct RowOutcome {
  std::optional<CellValue> predicted;
  std::optional<CellValue> matched;
};

// A row is correct when its matched text equals the truth text. Absent
// predictions count as "" for AED; each row's ANED term is clamped to 1.
MetricsReport ScoreTable(std::span<const RowOutcome> rows,
                         std::span<const CellValue> truth);

// One-to-one join results; match indices refer to `targets`.
MetricsReport ScoreTable(std::span<const JoinResult> results,
                         std::span<const CellValue> targets,
                         std::span<const CellValue> truth);

DatasetReport ScoreDataset(std::span<const MetricsReport> tables);

std::string ToJson(const MetricsReport& report);
std::string ToJson(const DatasetReport& report);

}  // namespace tabxform

#endif  // TABXFORM_EVAL_HPP_

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

#ifndef TABXFORM_AGGREGATOR_HPP_
#define TABXFORM_AGGREGATOR_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "tabxform/core.hpp"

namespace tabxform {

struct TrialSet {
  CellValue source;
  std::vector<std::optional<CellValue>> outputs;
};

struct AggregatedPrediction {
  CellValue source;
  std::optional<CellValue> target;
  std::size_t support = 0;  // occurrences of target among the trials
  std::size_t trials = 0;

  double confidence() const {
    return trials ? static_cast<double>(support) / static_cast<double>(trials)
                  : 0.0;
  }
};

// Most frequent present output. Ties go to the shorter string, then the
// smaller one in code point order. Absent outputs never win; they only count
// toward `trials`.
AggregatedPrediction Aggregate(const TrialSet& trials);

}  // namespace tabxform

#endif  // TABXFORM_AGGREGATOR_HPP_

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

#include "tabxform/aggregator.hpp"

#include <map>

namespace tabxform {

AggregatedPrediction Aggregate(const TrialSet& trials) {
  if (trials.outputs.empty()) {
    throw Error(ErrorCode::kConfig, "cannot aggregate zero trials");
  }
  std::map<CellValue, std::size_t> counts;
  for (const auto& o : trials.outputs) {
    if (o) ++counts[*o];
  }

  AggregatedPrediction out;
  out.source = trials.source;
  out.trials = trials.outputs.size();
  const CellValue* best = nullptr;
  for (const auto& [value, n] : counts) {
    // std::map visits in code point order, so only strictly better
    // (count, length) pairs replace the incumbent.
    if (!best || n > out.support ||
        (n == out.support && value.size() < best->size())) {
      best = &value;
      out.support = n;
    }
  }
  if (best) out.target = *best;
  return out;
}

}  // namespace tabxform

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


#include "tabxform/eval.hpp"

#include <algorithm>

#include "json.hpp"

namespace tabxform {

MetricsReport ScoreTable(std::span<const RowOutcome> rows,
                         std::span<const CellValue> truth) {
  if (rows.size() != truth.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "predictions have " + std::to_string(rows.size()) +
                    " rows, truth has " + std::to_string(truth.size()));
  }
  MetricsReport r;
  r.rows = rows.size();
  double aed = 0.0;
  double aned = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].matched) {
      ++r.predicted_rows;
      if (*rows[i].matched == truth[i]) ++r.correct_rows;
    }
    const CellValue& pred = rows[i].predicted ? *rows[i].predicted : CellValue();
    const auto d = static_cast<double>(EditDistance(pred, truth[i]));
    aed += d;
    aned += std::min(1.0, d / static_cast<double>(std::max<std::size_t>(1, truth[i].size())));
  }
  if (r.predicted_rows > 0) {
    r.precision = static_cast<double>(r.correct_rows) / static_cast<double>(r.predicted_rows);
  }
  if (r.rows > 0) {
    r.recall = static_cast<double>(r.correct_rows) / static_cast<double>(r.rows);
    r.aed = aed / static_cast<double>(r.rows);
    r.aned = aned / static_cast<double>(r.rows);
  }
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

MetricsReport ScoreTable(std::span<const JoinResult> results,
                         std::span<const CellValue> targets,
                         std::span<const CellValue> truth) {
  std::vector<RowOutcome> rows;
  rows.reserve(results.size());
  for (const auto& res : results) {
    RowOutcome row{res.predicted, std::nullopt};
    if (!res.matches.empty()) {
      const std::size_t idx = res.matches.front().index;
      if (idx >= targets.size()) {
        throw Error(ErrorCode::kLengthMismatch, "match index outside the target table");
      }
      row.matched = targets[idx];
    }
    rows.push_back(std::move(row));
  }
  return ScoreTable(rows, truth);
}

DatasetReport ScoreDataset(std::span<const MetricsReport> tables) {
  if (tables.empty()) throw Error(ErrorCode::kEmptyDataset, "dataset has no tables");
  DatasetReport d;
  d.tables.assign(tables.begin(), tables.end());
  const auto n = static_cast<double>(tables.size());
  double rows = 0, predicted = 0, correct = 0;
  for (const auto& t : tables) {
    d.mean.precision += t.precision;
    d.mean.recall += t.recall;
    d.mean.f1 += t.f1;
    d.mean.aed += t.aed;
    d.mean.aned += t.aned;
    rows += static_cast<double>(t.rows);
    predicted += static_cast<double>(t.predicted_rows);
    correct += static_cast<double>(t.correct_rows);
  }
  d.mean.precision /= n;
  d.mean.recall /= n;
  d.mean.f1 /= n;
  d.mean.aed /= n;
  d.mean.aned /= n;
  // Counts stay integral: the mean is rounded to the nearest row.
  d.mean.rows = static_cast<std::size_t>(rows / n + 0.5);
  d.mean.predicted_rows = static_cast<std::size_t>(predicted / n + 0.5);
  d.mean.correct_rows = static_cast<std::size_t>(correct / n + 0.5);
  return d;
}

namespace {

nlohmann::ordered_json Json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["aed"] = r.aed;
  j["aned"] = r.aned;
  j["rows"] = r.rows;
  j["predicted_rows"] = r.predicted_rows;
  j["correct_rows"] = r.correct_rows;
  return j;
}

}  // namespace

std::string ToJson(const MetricsReport& report) { return Json(report).dump(2); }

std::string ToJson(const DatasetReport& report) {
  nlohmann::ordered_json j;
  j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : report.tables) j["tables"].push_back(Json(t));
  j["mean"] = Json(report.mean);
  return j.dump(2);
}

}  // namespace tabxform

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


#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "json.hpp"
#include "tabxform/eval.hpp"

using namespace tabxform;
using testing::Cell;

namespace {

RowOutcome Hit(const std::string& pred, const std::string& matched) {
  return {Cell(pred), Cell(matched)};
}

RowOutcome Miss() { return {}; }

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("perfect joins") {
  const std::vector<RowOutcome> rows{Hit("a", "a"), Hit("bc", "bc")};
  const auto r = ScoreTable(rows, std::vector<CellValue>{Cell("a"), Cell("bc")});
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.f1 == 1.0);
  CHECK(r.aed == 0.0);
  CHECK(r.aned == 0.0);
  CHECK(r.correct_rows == 2);
}

TEST_CASE("one correct row and one absent") {
  const std::vector<RowOutcome> rows{Hit("x", "x"), Miss()};
  const auto r = ScoreTable(rows, std::vector<CellValue>{Cell("x"), Cell("yyyy")});
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 0.5);
  CHECK(r.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(r.predicted_rows == 1);
  // The absent row counts as "" against "yyyy".
  CHECK(r.aed == doctest::Approx(2.0));
  CHECK(r.aned == doctest::Approx(0.5));
}

TEST_CASE("distance terms are normalized by target length") {
  const std::vector<RowOutcome> rows{Hit("abc", "abcd")};
  const auto r = ScoreTable(rows, std::vector<CellValue>{Cell("abcd")});
  CHECK(r.aed == static_cast<double>(oracle::Levenshtein(U"abc", U"abcd")));
  CHECK(r.aed == 1.0);
  CHECK(r.aned == 0.25);
  CHECK(r.f1 == 1.0);
}

TEST_CASE("per-row normalized distance is clamped at one") {
  const std::vector<RowOutcome> rows{Hit("much longer prediction", "ab")};
  const auto r = ScoreTable(rows, std::vector<CellValue>{Cell("ab")});
  CHECK(r.aed > 2.0);
  CHECK(r.aned == 1.0);
  const std::vector<RowOutcome> empty_truth{Hit("abc", "")};
  CHECK(ScoreTable(empty_truth, std::vector<CellValue>{Cell("")}).aned == 1.0);
}

TEST_CASE("precision is zero when nothing is predicted") {
  const std::vector<RowOutcome> rows{Miss(), Miss()};
  const auto r = ScoreTable(rows, std::vector<CellValue>{Cell("a"), Cell("b")});
  CHECK(r.precision == 0.0);
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
}

TEST_CASE("random tables: invariants and reordering") {
  Rng rng(Seed{51});
  for (int i = 0; i < 300; ++i) {
    std::vector<RowOutcome> rows;
    std::vector<CellValue> truth;
    const auto n = 1 + rng.Below(10);
    for (std::uint64_t j = 0; j < n; ++j) {
      truth.emplace_back(testing::RandomText(rng, 5));
      switch (rng.Below(3)) {
        case 0: rows.push_back(Miss()); break;
        case 1: rows.push_back({truth.back(), truth.back()}); break;
        default:
          rows.push_back({CellValue(testing::RandomText(rng, 8)), CellValue(testing::RandomText(rng, 5))});
      }
    }
    const auto r = ScoreTable(rows, truth);
    CHECK(r.correct_rows <= r.predicted_rows);
    CHECK(r.predicted_rows <= r.rows);
    CHECK(r.aned >= 0.0);
    CHECK(r.aned <= 1.0);
    if (r.precision + r.recall > 0) {
      CHECK(r.f1 == doctest::Approx(2 * r.precision * r.recall / (r.precision + r.recall)));
    }
    for (std::size_t k = rows.size(); k > 1; --k) {
      const auto j = rng.Below(k);
      std::swap(rows[k - 1], rows[j]);
      std::swap(truth[k - 1], truth[j]);
    }
    const auto s = ScoreTable(rows, truth);
    CHECK(s.correct_rows == r.correct_rows);
    CHECK(s.f1 == doctest::Approx(r.f1));
    CHECK(s.aed == doctest::Approx(r.aed));
    CHECK(s.aned == doctest::Approx(r.aned));
  }
}

TEST_CASE("row counts must agree") {
  const std::vector<RowOutcome> rows{Miss()};
  try {
    ScoreTable(rows, std::vector<CellValue>{});
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLengthMismatch);
  }
}

TEST_CASE("dataset means are unweighted") {
  MetricsReport a, b;
  a.f1 = 1.0;
  a.rows = 10;
  b.f1 = 0.0;
  b.rows = 2;
  const std::vector<MetricsReport> two{a, b};
  const auto d = ScoreDataset(two);
  CHECK(d.mean.f1 == 0.5);
  CHECK(d.mean.rows == 6);
  const std::vector<MetricsReport> one{a};
  CHECK(ScoreDataset(one).mean.f1 == 1.0);
  try {
    ScoreDataset({});
    FAIL("expected EmptyDataset");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyDataset);
  }
}

TEST_CASE("report JSON schema") {
  MetricsReport r;
  r.rows = 3;
  const auto j = nlohmann::ordered_json::parse(ToJson(r));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"precision", "recall", "f1", "aed", "aned", "rows",
                                         "predicted_rows", "correct_rows"});
  const std::vector<MetricsReport> tables{r};
  const auto d = nlohmann::ordered_json::parse(ToJson(ScoreDataset(tables)));
  CHECK(d["tables"].size() == 1);
  CHECK(d["mean"]["rows"] == 3);
}

TEST_CASE("scoring join results") {
  JoinResult hit{Cell("s"), Cell("jchretien"), {{1, 0}}, JoinMode::kOneToOne, 5, 5};
  JoinResult miss{Cell("t"), std::nullopt, {}, JoinMode::kOneToOne, 0, 5};
  const std::vector<CellValue> targets{Cell("jtrudeau"), Cell("jchretien")};
  const std::vector<JoinResult> results{hit, miss};
  const auto r = ScoreTable(results, targets, std::vector<CellValue>{Cell("jchretien"), Cell("x")});
  CHECK(r.correct_rows == 1);
  CHECK(r.recall == 0.5);
}

}  // TEST_SUITE

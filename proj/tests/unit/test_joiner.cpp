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
#include "tabxform/joiner.hpp"

using namespace tabxform;
using testing::Cell;
using testing::Pair;

namespace {

std::vector<CellValue> Cells(std::vector<std::string> v) {
  std::vector<CellValue> out;
  for (auto& s : v) out.push_back(Cell(s));
  return out;
}

const std::vector<CellValue> kTargets = Cells({"jtrudeau", "jchretien", "kcampbell"});

}  // namespace

TEST_SUITE("joiner") {

TEST_CASE("edit distance") {
  CHECK(EditDistance(Cell("same"), Cell("same")) == 0);
  CHECK(EditDistance(Cell(""), Cell("abc")) == 3);
  CHECK(EditDistance(Cell("kitten"), Cell("sitting")) == oracle::Levenshtein(U"kitten", U"sitting"));
  CHECK(EditDistance(Cell("kitten"), Cell("sitting")) == 3);
  CHECK(EditDistance(Cell("\xC3\xA9"), Cell("e")) == 1);
}

TEST_CASE("edit distance matches the full-table oracle") {
  Rng rng(Seed{31});
  for (int i = 0; i < 3000; ++i) {
    const auto a = testing::RandomText(rng, 25);
    auto b = a;
    // Mix near-duplicates with unrelated pairs.
    if (rng.Below(2)) {
      b = testing::RandomText(rng, 25);
    } else if (!b.empty()) {
      b[rng.Below(b.size())] = U'~';
      b.insert(b.begin() + rng.Below(b.size() + 1), U'+');
    }
    CHECK(EditDistance(a, b) == oracle::Levenshtein(a, b));
  }
}

TEST_CASE("edit distance is a metric") {
  Rng rng(Seed{32});
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::RandomText(rng, 12);
    const auto b = testing::RandomText(rng, 12);
    const auto c = testing::RandomText(rng, 12);
    CHECK(EditDistance(a, b) == EditDistance(b, a));
    CHECK((EditDistance(a, b) == 0) == (a == b));
    CHECK(EditDistance(a, c) <= EditDistance(a, b) + EditDistance(b, c));
  }
}

TEST_CASE("best match") {
  CHECK(BestMatch(Cell("jchretien"), kTargets) == Match{1, 0});
  CHECK(BestMatch(Cell("jchretein"), kTargets) ==
        Match{1, oracle::Levenshtein(U"jchretein", U"jchretien")});
  CHECK(BestMatch(Cell("jchretein"), kTargets).distance == 2);
  // "ab" and "ba"-like ties resolve to the smaller text, then the index.
  CHECK(BestMatch(Cell("b"), Cells({"c", "a"})) == Match{1, 1});
  CHECK(BestMatch(Cell("x"), Cells({"a", "a"})) == Match{0, 1});
  CHECK_THROWS_AS(BestMatch(Cell("x"), {}), Error);
}

TEST_CASE("best match agrees with a linear scan") {
  Rng rng(Seed{33});
  for (int i = 0; i < 300; ++i) {
    std::vector<CellValue> targets;
    const auto n = 1 + rng.Below(20);
    for (std::uint64_t j = 0; j < n; ++j) targets.emplace_back(testing::RandomText(rng, 8));
    const CellValue q(testing::RandomText(rng, 8));
    std::size_t best = 0;
    for (std::size_t j = 1; j < targets.size(); ++j) {
      const auto dj = oracle::Levenshtein(q.text(), targets[j].text());
      const auto db = oracle::Levenshtein(q.text(), targets[best].text());
      if (dj < db || (dj == db && targets[j] < targets[best])) best = j;
    }
    CHECK(BestMatch(q, targets).index == best);
  }
}

TEST_CASE("bounded matches") {
  const auto all = BoundedMatches(Cell("jtrudeau"), kTargets, 0, std::nullopt);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == Match{0, 0});
  CHECK(std::is_sorted(all.begin(), all.end(),
                       [](const Match& a, const Match& b) { return a.distance < b.distance; }));
  const auto exact = BoundedMatches(Cell("jtrudeau"), kTargets, 0, 0);
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].index == 0);
  CHECK(BoundedMatches(Cell("zzz"), kTargets, 0, 0).empty());
  CHECK(BoundedMatches(Cell("jtrudeau"), kTargets, 1, std::nullopt).size() == 2);

  JoinConfig bad;
  bad.min_distance = 3;
  bad.max_distance = 2;
  CHECK_THROWS_AS(bad.Validate(), Error);
}

TEST_CASE("widening the bounds never drops a match") {
  Rng rng(Seed{34});
  for (int i = 0; i < 200; ++i) {
    std::vector<CellValue> targets;
    for (int j = 0; j < 15; ++j) targets.emplace_back(testing::RandomText(rng, 8));
    const CellValue q(testing::RandomText(rng, 8));
    const std::size_t lo = rng.Below(4), hi = lo + rng.Below(4);
    auto narrow = BoundedMatches(q, targets, lo, hi);
    auto wide = BoundedMatches(q, targets, lo > 0 ? lo - 1 : 0, hi + 1);
    for (const auto& m : narrow) {
      CHECK(std::find(wide.begin(), wide.end(), m) != wide.end());
    }
  }
}

TEST_CASE("join on the worked example") {
  const ExampleSet examples({Pair("Justin Trudeau", "jtrudeau"), Pair("Stephen Harper", "sharper"),
                             Pair("Paul Martin", "pmartin")});
  SynthesisPredictor synth({});
  const auto sources = Cells({"Jean Chretien", "Kim Campbell"});
  const auto targets = Cells({"jtrudeau", "jchretien", "kcampbell", "pmartin"});
  JoinConfig cfg;
  const auto report = Join(sources, targets, examples, {&synth}, cfg, Seed{1});
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].predicted->utf8() == "jchretien");
  CHECK(report.rows[0].matches == std::vector<Match>{{1, 0}});
  CHECK(report.rows[1].matches == std::vector<Match>{{2, 0}});
  CHECK(report.rows[0].trials == 5);

  cfg.threads = 3;
  const auto threaded = Join(sources, targets, examples, {&synth}, cfg, Seed{1});
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(threaded.rows[i].matches == report.rows[i].matches);
    CHECK(threaded.rows[i].support == report.rows[i].support);
  }

  CHECK_THROWS_AS(Join(sources, {}, examples, {&synth}, cfg, Seed{1}), Error);
  cfg.context_size = 4;
  CHECK_THROWS_AS(Join(sources, targets, examples, {&synth}, cfg, Seed{1}), Error);
}

TEST_CASE("absent predictions produce no match") {
  const ExampleSet examples({Pair("ab", "zzz"), Pair("cd", "www")});
  SynthesisPredictor synth({});
  const auto report = Join(Cells({"ef"}), Cells({"zzz"}), examples, {&synth}, {}, Seed{2});
  CHECK_FALSE(report.rows[0].predicted.has_value());
  CHECK(report.rows[0].matches.empty());
}

TEST_CASE("an exact unique prediction always joins correctly") {
  Rng rng(Seed{35});
  for (int i = 0; i < 300; ++i) {
    std::vector<CellValue> targets;
    for (int j = 0; j < 10; ++j) targets.emplace_back(testing::RandomText(rng, 6));
    const std::size_t truth = rng.Below(targets.size());
    const bool unique = std::count(targets.begin(), targets.end(), targets[truth]) == 1;
    if (!unique) continue;
    CHECK(targets[BestMatch(targets[truth], targets).index] == targets[truth]);
  }
}

}  // TEST_SUITE

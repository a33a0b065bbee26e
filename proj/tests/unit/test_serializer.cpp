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


#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "tabxform/serializer.hpp"

using namespace tabxform;
using testing::Cell;
using testing::Ctx;
using testing::Pair;

namespace {

ExampleSet Numbered(std::size_t n) {
  std::vector<ExamplePair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    pairs.push_back(Pair("s" + std::to_string(i), "t" + std::to_string(i)));
  }
  return ExampleSet(pairs);
}

}  // namespace

TEST_SUITE("serializer") {

TEST_CASE("the worked prompt serializes byte for byte") {
  const auto c = Ctx({Pair("Justin Trudeau", "jtrudeau"), Pair("Paul Martin", "pmartin")});
  CHECK(Serialize(c, Cell("Jean Chretien")).text ==
        "<sos>Justin Trudeau<tr>jtrudeau<eoe>Paul Martin<tr>pmartin<eoe>Jean Chretien<tr><eos>");
  CHECK(Serialize(c, Cell("")).text.ends_with("<eoe><tr><eos>"));
  CHECK_THROWS_AS(Serialize(c, Cell("a<tr>b")), MarkerCollision);
}

TEST_CASE("labels") {
  CHECK(SerializeLabel(Cell("jchretien")).text == "<sos>jchretien<eos>");
  CHECK(SerializeLabel(Cell("")).text == "<sos><eos>");
  CHECK_THROWS_AS(SerializeLabel(Cell("x<eos>")), MarkerCollision);
}

TEST_CASE("parse_output") {
  CHECK(ParseOutput("<sos>jchretien<eos>")->utf8() == "jchretien");
  CHECK_FALSE(ParseOutput("<sos><eos>").has_value());
  CHECK(ParseOutput("jchretien")->utf8() == "jchretien");
  CHECK(ParseOutput("abc<eos>junk")->utf8() == "abc");
  CHECK(ParseOutput(" padded ")->utf8() == " padded ");
  CHECK_FALSE(ParseOutput("").has_value());
  CHECK(ParseOutput("a\xFF" "b")->text() == U"a�b");
}

TEST_CASE("label round trip") {
  Rng rng(Seed{9});
  for (int i = 0; i < 2000; ++i) {
    const CellValue t(testing::RandomText(rng, 30));
    const auto back = ParseOutput(SerializeLabel(t).text);
    if (t.empty()) {
      CHECK_FALSE(back.has_value());
    } else {
      REQUIRE(back.has_value());
      CHECK(*back == t);
    }
  }
}

TEST_CASE("enumerate_contexts") {
  CHECK(EnumerateContexts(Numbered(3), 2).size() == 3);
  CHECK(EnumerateContexts(Numbered(2), 2).size() == 1);
  const auto all = EnumerateContexts(Numbered(5), 2);
  CHECK(all.size() == 10);
  CHECK(std::set<Context>(all.begin(), all.end()).size() == 10);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& c : all) CHECK(c[0].source < c[1].source);
  CHECK(EnumerateContexts(Numbered(7), 3).size() == Binomial(7, 3));
  CHECK_THROWS_AS(EnumerateContexts(Numbered(1), 2), Error);
}

TEST_CASE("binomial") {
  CHECK(Binomial(5, 2) == 10);
  CHECK(Binomial(10, 3) == 120);
  CHECK(Binomial(3, 4) == 0);
  CHECK(Binomial(200, 100) == SIZE_MAX);
}

TEST_CASE("sample_contexts") {
  Rng rng(Seed{1});
  const auto five = SampleContexts(Numbered(10), 2, 5, rng);
  CHECK(five.size() == 5);
  CHECK(std::set<Context>(five.begin(), five.end()).size() == 5);

  const auto repeated = SampleContexts(Numbered(2), 2, 5, rng);
  CHECK(repeated.size() == 5);
  for (const auto& c : repeated) CHECK(c == repeated[0]);

  // Three distinct contexts exist; all appear before any repeat.
  const auto eight = SampleContexts(Numbered(3), 2, 8, rng);
  CHECK(std::set<Context>(eight.begin(), eight.begin() + 3).size() == 3);

  Rng a(Seed{4}), b(Seed{4});
  CHECK(SampleContexts(Numbered(30), 2, 20, a) == SampleContexts(Numbered(30), 2, 20, b));

  // Large spaces use rejection sampling; samples stay distinct.
  const auto big = SampleContexts(Numbered(60), 5, 50, rng);
  CHECK(std::set<Context>(big.begin(), big.end()).size() == 50);

  CHECK_THROWS_AS(SampleContexts(Numbered(1), 2, 1, rng), Error);
  CHECK_THROWS_AS(SampleContexts(Numbered(3), 2, 0, rng), Error);
  CHECK_THROWS_AS(SampleContexts(Numbered(3), 0, 1, rng), Error);
}

TEST_CASE("serialize is injective on random inputs") {
  Rng rng(Seed{13});
  std::set<std::string> prompts;
  std::set<std::pair<Context, CellValue>> inputs;
  for (int i = 0; i < 1000; ++i) {
    auto a = CellValue(testing::RandomText(rng, 4));
    auto b = CellValue(testing::RandomText(rng, 4));
    auto s2 = CellValue(testing::RandomText(rng, 4));
    if (a == s2) continue;
    const Context c({{a, b}, {s2, CellValue(testing::RandomText(rng, 4))}});
    const CellValue q(testing::RandomText(rng, 4));
    if (inputs.insert({c, q}).second) prompts.insert(Serialize(c, q).text);
  }
  CHECK(prompts.size() == inputs.size());
}

TEST_CASE("prompt length lint") {
  CHECK(RowLengthBound(2) == 102);
  const auto c = Ctx({Pair(std::string(150, 'a'), "x"), Pair("b", "y")});
  const auto warnings = LintPromptLengths(c, Cell("q"));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("example 0 source") != std::string::npos);
}

}  // TEST_SUITE

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


#include <unistd.h>

#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "tabxform/io.hpp"

using namespace tabxform;
using testing::Cell;
using testing::Pair;

namespace fs = std::filesystem;

namespace {

fs::path Scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tabxform_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("csv parsing") {
  CHECK(ParseCsv("a,b\r\nc,d\r\n") == std::vector<CsvRow>{{"a", "b"}, {"c", "d"}});
  CHECK(ParseCsv("a,b\nc,d") == std::vector<CsvRow>{{"a", "b"}, {"c", "d"}});
  CHECK(ParseCsv("\"a,b\",\"say \"\"hi\"\"\"\n") == std::vector<CsvRow>{{"a,b", "say \"hi\""}});
  CHECK(ParseCsv("\"line\nbreak\",x\n") == std::vector<CsvRow>{{"line\nbreak", "x"}});
  CHECK(ParseCsv("value\n\"\"\n\n") == std::vector<CsvRow>{{"value"}, {""}, {""}});
  CHECK(ParseCsv("a,,\n") == std::vector<CsvRow>{{"a", "", ""}});
  CHECK(ParseCsv("").empty());
  CHECK_THROWS_AS(ParseCsv("\"open"), Error);
  CHECK_THROWS_AS(ParseCsv("a\"b"), Error);
  CHECK_THROWS_AS(ParseCsv("\"a\"b"), Error);
}

TEST_CASE("csv formatting round-trips") {
  const std::vector<CsvRow> rows{{"value"}, {""}, {"a,b"}, {"q\"q"}, {"x\r\ny"}, {" lead"}};
  CHECK(ParseCsv(FormatCsv(rows)) == rows);
  CHECK(FormatCsv({{"a", ""}}) == "a,\r\n");
  CHECK(FormatCsv({{""}}) == "\"\"\r\n");
}

TEST_CASE("column and example files") {
  const std::vector<CellValue> cells{Cell("Jean Chretien"), Cell(""), Cell("a,\"b\""), Cell("\xC3\xA9")};
  const auto col = Scratch("col.csv");
  WriteColumnCsv(col, cells);
  CHECK(ReadColumnCsv(col) == cells);

  const ExampleSet ex({Pair("Justin Trudeau", "jtrudeau"), Pair("x", "")});
  const auto path = Scratch("ex.csv");
  WriteExamplesCsv(path, ex);
  CHECK(ReadExamplesCsv(path).pairs() == ex.pairs());

  WriteFile(Scratch("bad.csv"), "source,target\na\n");
  CHECK_THROWS_AS(ReadExamplesCsv(Scratch("bad.csv")), Error);
  WriteFile(Scratch("hdr.csv"), "v\na\n");
  CHECK_THROWS_AS(ReadColumnCsv(Scratch("hdr.csv")), Error);
  WriteFile(Scratch("marker.csv"), "value\na<eos>\n");
  CHECK_THROWS_AS(ReadColumnCsv(Scratch("marker.csv")), MarkerCollision);
  CHECK_THROWS_AS(ReadFile(Scratch("missing.csv")), Error);

  WriteFile(Scratch("cols.csv"), "x,source,y\n1,a,2\n");
  CHECK(ReadCsvColumns(Scratch("cols.csv"), {"y", "source"}) ==
        std::vector<std::vector<std::string>>{{"2", "a"}});
  CHECK_THROWS_AS(ReadCsvColumns(Scratch("cols.csv"), {"z"}), Error);
  fs::remove_all(col.parent_path());
}

TEST_CASE("sha256") {
  CHECK(Sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // TEST_SUITE

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


#include "tabxform/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

namespace tabxform {

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kParse, "malformed CSV: " + what);
}

bool NeedsQuotes(std::string_view f) {
  return f.find_first_of(",\"\r\n") != std::string_view::npos;
}

std::vector<CsvRow> ReadTable(const std::filesystem::path& path,
                              const std::vector<std::string>& header) {
  std::vector<CsvRow> rows = ParseCsv(ReadFile(path));
  if (rows.empty() || rows.front() != header) {
    std::string want;
    for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
    throw Error(ErrorCode::kParse, path.string() + ": expected header '" + want + "'");
  }
  rows.erase(rows.begin());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw Error(ErrorCode::kParse, path.string() + ": row " + std::to_string(i + 1) +
                                         " has " + std::to_string(rows[i].size()) +
                                         " fields");
    }
  }
  return rows;
}

}  // namespace

std::vector<CsvRow> ParseCsv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  std::size_t i = 0;
  bool at_record_start = true;
  while (i < text.size()) {
    at_record_start = false;
    if (text[i] == '"' && field.empty()) {
      ++i;
      for (;;) {
        if (i >= text.size()) Malformed("unterminated quoted field");
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field.push_back(text[i++]);
      }
      if (i < text.size() && text[i] != ',' && text[i] != '\r' && text[i] != '\n') {
        Malformed("text after closing quote");
      }
      continue;
    }
    const char c = text[i];
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      ++i;
    } else if (c == '\r' || c == '\n') {
      i += (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ? 2 : 1;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      at_record_start = true;
    } else if (c == '"') {
      Malformed("quote inside unquoted field");
    } else {
      field.push_back(c);
      ++i;
    }
  }
  if (!at_record_start) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatCsv(const std::vector<CsvRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.push_back(',');
      const std::string& f = row[j];
      if (NeedsQuotes(f) || (f.empty() && row.size() == 1)) {
        out.push_back('"');
        for (char c : f) {
          if (c == '"') out.push_back('"');
          out.push_back(c);
        }
        out.push_back('"');
      } else {
        out += f;
      }
    }
    out += "\r\n";
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::vector<CellValue> ReadColumnCsv(const std::filesystem::path& path) {
  std::vector<CellValue> cells;
  for (const auto& row : ReadTable(path, {"value"})) {
    cells.push_back(ValidateCell(row[0]));
  }
  return cells;
}

void WriteColumnCsv(const std::filesystem::path& path,
                    const std::vector<CellValue>& cells) {
  std::vector<CsvRow> rows{{"value"}};
  for (const auto& c : cells) rows.push_back({c.utf8()});
  WriteFile(path, FormatCsv(rows));
}

ExampleSet ReadExamplesCsv(const std::filesystem::path& path) {
  std::vector<ExamplePair> pairs;
  for (const auto& row : ReadTable(path, {"source", "target"})) {
    pairs.push_back({ValidateCell(row[0]), ValidateCell(row[1])});
  }
  return ExampleSet(std::move(pairs));
}

void WriteExamplesCsv(const std::filesystem::path& path, const ExampleSet& examples) {
  std::vector<CsvRow> rows{{"source", "target"}};
  for (const auto& p : examples) rows.push_back({p.source.utf8(), p.target.utf8()});
  WriteFile(path, FormatCsv(rows));
}

std::vector<std::vector<std::string>> ReadCsvColumns(
    const std::filesystem::path& path, const std::vector<std::string>& columns) {
  std::vector<CsvRow> rows = ParseCsv(ReadFile(path));
  if (rows.empty()) throw Error(ErrorCode::kParse, path.string() + ": missing header");
  std::vector<std::size_t> pos;
  for (const auto& name : columns) {
    auto it = std::find(rows[0].begin(), rows[0].end(), name);
    if (it == rows[0].end()) {
      throw Error(ErrorCode::kParse, path.string() + ": no column '" + name + "'");
    }
    pos.push_back(static_cast<std::size_t>(it - rows[0].begin()));
  }
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) {
      throw Error(ErrorCode::kParse, path.string() + ": row " + std::to_string(i) +
                                         " has " + std::to_string(rows[i].size()) +
                                         " fields");
    }
    std::vector<std::string> picked;
    for (std::size_t p : pos) picked.push_back(rows[i][p]);
    out.push_back(std::move(picked));
  }
  return out;
}

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

std::string Sha256File(const std::filesystem::path& path) {
  return Sha256Hex(ReadFile(path));
}

}  // namespace tabxform

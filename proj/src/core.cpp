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

#include "tabxform/core.hpp"

#include <algorithm>
#include <set>

namespace tabxform {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMarkerCollision: return "MarkerCollision";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kEmptyExampleSet: return "EmptyExampleSet";
    case ErrorCode::kDuplicateExample: return "DuplicateExample";
    case ErrorCode::kInsufficientExamples: return "InsufficientExamples";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kRemote: return "RemoteError";
    case ErrorCode::kOversizePrompt: return "OversizePrompt";
    case ErrorCode::kEmptyTargetTable: return "EmptyTargetTable";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

MarkerCollision::MarkerCollision(std::string marker, std::size_t position)
    : Error(ErrorCode::kMarkerCollision,
            "reserved marker " + marker + " at position " +
                std::to_string(position)),
      marker_(std::move(marker)),
      position_(position) {}

RemoteError::RemoteError(int status, std::string body)
    : Error(ErrorCode::kRemote,
            "remote predictor failed (status " + std::to_string(status) +
                "): " + body),
      status_(status),
      body_(std::move(body)) {}

namespace {

[[noreturn]] void BadUtf8(std::size_t offset) {
  throw Error(ErrorCode::kInvalidUtf8,
              "invalid UTF-8 at byte " + std::to_string(offset));
}

}  // namespace

std::u32string DecodeUtf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len;
    char32_t cp;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      BadUtf8(i);
    }
    if (i + len > bytes.size()) BadUtf8(i);
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) BadUtf8(i + k);
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      BadUtf8(i);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void AppendUtf8(char32_t c, std::string& out) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) AppendUtf8(c, out);
  return out;
}

std::optional<std::pair<std::string, std::size_t>> FindMarker(
    std::u32string_view text) {
  std::optional<std::pair<std::string, std::size_t>> best;
  for (auto marker : kMarkers) {
    const auto pos = text.find(marker);
    if (pos == std::u32string_view::npos) continue;
    if (!best || pos < best->second) best.emplace(EncodeUtf8(marker), pos);
  }
  return best;
}

const CellValue& ValidateCell(const CellValue& cell) {
  if (auto hit = FindMarker(cell.text())) {
    throw MarkerCollision(hit->first, hit->second);
  }
  return cell;
}

CellValue ValidateCell(std::string_view utf8) {
  CellValue cell = CellValue::FromUtf8(utf8);
  ValidateCell(cell);
  return cell;
}

ExampleSet::ExampleSet(std::vector<ExamplePair> pairs)
    : pairs_(std::move(pairs)) {
  if (pairs_.empty()) {
    throw Error(ErrorCode::kEmptyExampleSet, "example set is empty");
  }
  std::set<ExamplePair> seen;
  for (const auto& p : pairs_) {
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::kDuplicateExample,
                  "duplicate example pair (" + p.source.utf8() + " -> " +
                      p.target.utf8() + ")");
    }
  }
}

Context::Context(std::vector<ExamplePair> examples)
    : examples_(std::move(examples)) {
  std::sort(examples_.begin(), examples_.end());
  if (std::adjacent_find(examples_.begin(), examples_.end()) !=
      examples_.end()) {
    throw Error(ErrorCode::kDuplicateExample, "context members must differ");
  }
}

std::pair<ExampleSet, TablePair> SplitExamples(const TablePair& table) {
  if (!table.aligned || table.source_rows.size() != table.target_rows.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "example split needs an aligned table pair");
  }
  const std::size_t n = table.rows();
  if (n < 2) {
    throw Error(ErrorCode::kTooFewRows,
                "need at least 2 aligned rows, got " + std::to_string(n));
  }
  const std::size_t head = (n + 1) / 2;
  std::vector<ExamplePair> pairs;
  pairs.reserve(head);
  for (std::size_t i = 0; i < head; ++i) {
    pairs.push_back({table.source_rows[i], table.target_rows[i]});
  }
  TablePair test;
  test.aligned = true;
  test.source_rows.assign(table.source_rows.begin() + head,
                          table.source_rows.end());
  test.target_rows.assign(table.target_rows.begin() + head,
                          table.target_rows.end());
  return {ExampleSet(std::move(pairs)), std::move(test)};
}

}  // namespace tabxform

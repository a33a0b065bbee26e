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

// Shared domain types: cells, example pairs, example sets, contexts and
// table pairs, plus the error hierarchy used by every module.

#ifndef TABXFORM_CORE_HPP_
#define TABXFORM_CORE_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tabxform {

enum class ErrorCode {
  kMarkerCollision,
  kInvalidUtf8,
  kTooFewRows,
  kEmptyExampleSet,
  kDuplicateExample,
  kInsufficientExamples,
  kConfig,
  kParse,
  kRemote,
  kOversizePrompt,
  kEmptyTargetTable,
  kLengthMismatch,
  kEmptyDataset,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class MarkerCollision : public Error {
 public:
  MarkerCollision(std::string marker, std::size_t position);
  const std::string& marker() const { return marker_; }
  // Offset of the marker in Unicode scalar values.
  std::size_t position() const { return position_; }

 private:
  std::string marker_;
  std::size_t position_;
};

class RemoteError : public Error {
 public:
  RemoteError(int status, std::string body);
  // HTTP status, or 0 for transport failures.
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

// UTF-8 <-> Unicode scalar values. Decoding rejects overlong forms,
// surrogates and out-of-range code points.
std::u32string DecodeUtf8(std::string_view bytes);
std::string EncodeUtf8(std::u32string_view text);
void AppendUtf8(char32_t c, std::string& out);

// The four reserved prompt markers.
inline constexpr std::array<std::u32string_view, 4> kMarkers = {
    U"<sos>", U"<eos>", U"<tr>", U"<eoe>"};

// A single table cell. The text is stored as Unicode scalar values so that
// indices in the transformation grammar and edit distances count characters,
// not bytes. Construction does not check for markers; ValidateCell does.
class CellValue {
 public:
  CellValue() = default;
  explicit CellValue(std::u32string text) : text_(std::move(text)) {}

  static CellValue FromUtf8(std::string_view utf8) {
    return CellValue(DecodeUtf8(utf8));
  }

  const std::u32string& text() const { return text_; }
  std::string utf8() const { return EncodeUtf8(text_); }
  std::size_t size() const { return text_.size(); }
  bool empty() const { return text_.empty(); }

  friend bool operator==(const CellValue&, const CellValue&) = default;
  friend auto operator<=>(const CellValue& a, const CellValue& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  std::u32string text_;
};

// Earliest reserved marker in `text`, as (marker, scalar offset).
std::optional<std::pair<std::string, std::size_t>> FindMarker(
    std::u32string_view text);

// Throws MarkerCollision if the text contains a reserved marker.
CellValue ValidateCell(std::string_view utf8);
const CellValue& ValidateCell(const CellValue& cell);

struct ExamplePair {
  CellValue source;
  CellValue target;

  friend bool operator==(const ExamplePair&, const ExamplePair&) = default;
  friend auto operator<=>(const ExamplePair&, const ExamplePair&) = default;
};

// The user-provided examples. Non-empty and free of duplicate pairs.
class ExampleSet {
 public:
  explicit ExampleSet(std::vector<ExamplePair> pairs);

  const std::vector<ExamplePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  const ExamplePair& operator[](std::size_t i) const { return pairs_[i]; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

 private:
  std::vector<ExamplePair> pairs_;
};

// An ordered k-subset of an ExampleSet used as prompt context. Members are
// distinct and kept in canonical order (ascending source, then target).
class Context {
 public:
  Context() = default;
  explicit Context(std::vector<ExamplePair> examples);

  const std::vector<ExamplePair>& examples() const { return examples_; }
  std::size_t size() const { return examples_.size(); }
  const ExamplePair& operator[](std::size_t i) const { return examples_[i]; }
  auto begin() const { return examples_.begin(); }
  auto end() const { return examples_.end(); }

  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context& a, const Context& b) {
    return a.examples_ <=> b.examples_;
  }

 private:
  std::vector<ExamplePair> examples_;
};

struct TablePair {
  std::vector<CellValue> source_rows;
  std::vector<CellValue> target_rows;
  bool aligned = true;

  std::size_t rows() const { return source_rows.size(); }
};

struct Seed {
  std::uint64_t value = 0;
};

// Prefix split of an aligned table: the first ceil(n/2) rows become the
// example set, the rest the held-out test pair.
std::pair<ExampleSet, TablePair> SplitExamples(const TablePair& table);

}  // namespace tabxform

template <>
struct std::hash<tabxform::CellValue> {
  std::size_t operator()(const tabxform::CellValue& c) const noexcept {
    return std::hash<std::u32string>{}(c.text());
  }
};

#endif  // TABXFORM_CORE_HPP_

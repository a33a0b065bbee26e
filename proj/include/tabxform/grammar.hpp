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

// The string transformation language: five primitive units, chains of up to
// three stacked units, and transformations that concatenate chain outputs.
//
// Text form (see docs/grammar.md):
//   transformation := chain (" + " chain)*
//   chain          := unit ("|" unit)*
//   unit           := "substr(" INT "," (INT | "END") ")"
//                   | "split(" CHAR "," INT ")"
//                   | "lower" | "upper"
//                   | "literal(" STRING ")"

#ifndef TABXFORM_GRAMMAR_HPP_
#define TABXFORM_GRAMMAR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tabxform/core.hpp"
#include "tabxform/rng.hpp"

namespace tabxform {

struct Substr {
  std::size_t start = 0;
  std::optional<std::size_t> end;  // nullopt is END

  friend bool operator==(const Substr&, const Substr&) = default;
};

struct Split {
  char32_t delimiter = U' ';
  std::size_t part = 0;

  friend bool operator==(const Split&, const Split&) = default;
};

struct Lower {
  friend bool operator==(const Lower&, const Lower&) = default;
};

struct Upper {
  friend bool operator==(const Upper&, const Upper&) = default;
};

struct Literal {
  std::u32string text;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Unit = std::variant<Substr, Split, Lower, Upper, Literal>;

inline constexpr std::size_t kMaxStack = 3;
inline constexpr std::size_t kMaxChains = 6;

class UnitChain {
 public:
  // Throws Error(kConfig) unless 1 <= size <= 3, Literal appears only at the
  // head, Substr has start <= end and Literal text is non-empty.
  explicit UnitChain(std::vector<Unit> units);

  const std::vector<Unit>& units() const { return units_; }
  std::size_t size() const { return units_.size(); }

  friend bool operator==(const UnitChain&, const UnitChain&) = default;

 private:
  std::vector<Unit> units_;
};

class Transformation {
 public:
  explicit Transformation(std::vector<UnitChain> chains);

  const std::vector<UnitChain>& chains() const { return chains_; }
  std::size_t size() const { return chains_.size(); }
  std::size_t unit_count() const;

  friend bool operator==(const Transformation&, const Transformation&) =
      default;

 private:
  std::vector<UnitChain> chains_;
};

// Unicode simple case mapping of a single scalar value.
char32_t ToLower(char32_t c);
char32_t ToUpper(char32_t c);

std::u32string ApplyUnit(const Unit& unit, std::u32string_view input);
std::u32string ApplyChain(const UnitChain& chain, std::u32string_view input);
std::u32string ApplyTransformation(const Transformation& t,
                                   std::u32string_view input);

inline CellValue ApplyTransformation(const Transformation& t,
                                     const CellValue& input) {
  return CellValue(ApplyTransformation(t, std::u32string_view(input.text())));
}

// Canonical text form; ParseTransformation(ToText(t)) == t.
std::string ToText(const Unit& unit);
std::string ToText(const UnitChain& chain);
std::string ToText(const Transformation& t);
Transformation ParseTransformation(std::string_view text);
UnitChain ParseChain(std::string_view text);

// JSON form: {"chains":[[{"op":"substr","start":0,"end":null}, ...], ...]}
std::string ToJson(const Transformation& t);
Transformation TransformationFromJson(std::string_view json);

// Default random-source alphabet: ASCII letters, digits, space and
// -_./,:;@#()
std::u32string DefaultAlphabet();

struct GrammarConfig {
  std::size_t max_chains = kMaxChains;
  std::size_t max_stack = kMaxStack;
  std::u32string literal_alphabet = DefaultAlphabet();
  // Exclusive upper bound for Substr indices.
  std::size_t param_bound = 40;
  // Exclusive upper bound for Split part indices.
  std::size_t split_part_bound = 4;
  // Candidate Split delimiters.
  std::u32string delimiters = U" -_./,:;@#()";
  // Literal lengths are drawn from [1, max_literal_length].
  std::size_t max_literal_length = 3;

  void Validate() const;
};

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

Transformation RandomTransformation(Rng& rng, const GrammarConfig& cfg,
                                    IntRange num_chains);

CellValue RandomSource(Rng& rng, IntRange len_range,
                       std::u32string_view alphabet);

}  // namespace tabxform

#endif  // TABXFORM_GRAMMAR_HPP_

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

// Problem decomposition into k-example contexts and the marker-delimited
// prompt format:
//
//   <sos>s1<tr>t1<eoe>s2<tr>t2<eoe>query<tr><eos>     (prompt)
//   <sos>target<eos>                                  (label)

#ifndef TABXFORM_SERIALIZER_HPP_
#define TABXFORM_SERIALIZER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabxform/core.hpp"
#include "tabxform/rng.hpp"

namespace tabxform {

inline constexpr std::size_t kDefaultContextSize = 2;

struct Prompt {
  std::string text;  // UTF-8
  friend bool operator==(const Prompt&, const Prompt&) = default;
};

struct LabelText {
  std::string text;  // UTF-8
  friend bool operator==(const LabelText&, const LabelText&) = default;
};

// Number of k-subsets of an n-element set, saturating at SIZE_MAX.
std::size_t Binomial(std::size_t n, std::size_t k);

// All C(|E|, k) contexts, each canonical, sorted ascending.
std::vector<Context> EnumerateContexts(const ExampleSet& examples,
                                       std::size_t k);

// n contexts: distinct while C(|E|, k) >= n; otherwise every distinct
// context once, then uniform draws with replacement.
std::vector<Context> SampleContexts(const ExampleSet& examples, std::size_t k,
                                    std::size_t n, Rng& rng);

Prompt Serialize(const Context& context, const CellValue& query);
LabelText SerializeLabel(const CellValue& target);

// Inverse of SerializeLabel that also accepts bare completions. Strips one
// leading <sos>, cuts at the first <eos>; an empty remainder is "no
// prediction". Invalid UTF-8 bytes become U+FFFD.
std::optional<CellValue> ParseOutput(std::string_view raw);

// Per-row length bound floor(model_tokens / (2k + 1)) for a fixed-window
// sequence model.
std::size_t RowLengthBound(std::size_t k, std::size_t model_tokens = 512);

// Advisory: describes cells in the prompt that exceed RowLengthBound.
std::vector<std::string> LintPromptLengths(const Context& context,
                                           const CellValue& query,
                                           std::size_t model_tokens = 512);

}  // namespace tabxform

#endif  // TABXFORM_SERIALIZER_HPP_

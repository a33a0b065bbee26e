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


#ifndef TABXFORM_TESTS_UNIT_HELPERS_HPP_
#define TABXFORM_TESTS_UNIT_HELPERS_HPP_

#include <string>
#include <vector>

#include "tabxform/core.hpp"
#include "tabxform/grammar.hpp"

namespace testing {

inline tabxform::CellValue Cell(const std::string& utf8) {
  return tabxform::CellValue::FromUtf8(utf8);
}

inline tabxform::ExamplePair Pair(const std::string& s, const std::string& t) {
  return {Cell(s), Cell(t)};
}

inline tabxform::Context Ctx(std::vector<tabxform::ExamplePair> pairs) {
  return tabxform::Context(std::move(pairs));
}

inline std::string Apply(const std::string& program, const std::string& input) {
  return tabxform::ApplyTransformation(tabxform::ParseTransformation(program), Cell(input)).utf8();
}

// Random text over a small alphabet that still exercises case mapping and
// every default delimiter.
inline std::u32string RandomText(tabxform::Rng& rng, std::size_t max_len) {
  static const std::u32string kAlphabet = U"abcABC xyz-_./,:;@#()019éÉß";
  std::u32string s(rng.Below(max_len + 1), U'a');
  for (auto& c : s) c = kAlphabet[rng.Below(kAlphabet.size())];
  return s;
}

}  // namespace testing

#endif  // TABXFORM_TESTS_UNIT_HELPERS_HPP_

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

#include "tabxform/serializer.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tabxform {

namespace {

constexpr std::string_view kSos = "<sos>";
constexpr std::string_view kEos = "<eos>";
constexpr std::string_view kTr = "<tr>";
constexpr std::string_view kEoe = "<eoe>";

// Above this many combinations sampling switches from full enumeration to
// rejection of repeated index sets.
constexpr std::size_t kEnumerationLimit = 200000;

void CheckSizes(const ExampleSet& examples, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kConfig, "context size must be >= 1");
  if (examples.size() < k) {
    throw Error(ErrorCode::kInsufficientExamples,
                "need at least " + std::to_string(k) + " examples, have " +
                    std::to_string(examples.size()));
  }
}

Context MakeContext(const ExampleSet& examples,
                    const std::vector<std::size_t>& idx) {
  std::vector<ExamplePair> members;
  members.reserve(idx.size());
  for (std::size_t i : idx) members.push_back(examples[i]);
  return Context(std::move(members));
}

// Visits every k-combination of [0, n) in lexicographic index order.
template <class Fn>
void ForEachCombination(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::size_t> RandomCombination(std::size_t n, std::size_t k,
                                           Rng& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng.Below(n - i)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void AppendCell(const CellValue& cell, std::string& out) {
  ValidateCell(cell);
  for (char32_t c : cell.text()) AppendUtf8(c, out);
}

std::u32string DecodeLenient(std::string_view bytes) {
  std::u32string out;
  std::size_t i = 0;
  while (i < bytes.size()) {
    // Decode one scalar at a time; on failure emit U+FFFD and skip a byte.
    std::size_t len = 1;
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 >= 0xF0) len = 4;
    else if (b0 >= 0xE0) len = 3;
    else if (b0 >= 0xC0) len = 2;
    try {
      if (i + len > bytes.size()) throw Error(ErrorCode::kInvalidUtf8, "");
      out += DecodeUtf8(bytes.substr(i, len));
      i += len;
    } catch (const Error&) {
      out.push_back(0xFFFD);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::size_t Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    const std::size_t num = n - k + i;
    if (r > SIZE_MAX / num) return SIZE_MAX;
    r = r * num / i;
  }
  return r;
}

std::vector<Context> EnumerateContexts(const ExampleSet& examples,
                                       std::size_t k) {
  CheckSizes(examples, k);
  std::vector<Context> out;
  out.reserve(Binomial(examples.size(), k));
  ForEachCombination(examples.size(), k, [&](const auto& idx) {
    out.push_back(MakeContext(examples, idx));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Context> SampleContexts(const ExampleSet& examples, std::size_t k,
                                    std::size_t n, Rng& rng) {
  CheckSizes(examples, k);
  if (n < 1) throw Error(ErrorCode::kConfig, "trial count must be >= 1");
  const std::size_t total = Binomial(examples.size(), k);
  std::vector<Context> out;
  out.reserve(n);

  if (total <= kEnumerationLimit) {
    std::vector<Context> all = EnumerateContexts(examples, k);
    const std::size_t distinct = std::min(n, all.size());
    for (std::size_t i = 0; i < distinct; ++i) {
      std::swap(all[i], all[i + rng.Below(all.size() - i)]);
      out.push_back(all[i]);
    }
    while (out.size() < n) out.push_back(all[rng.Below(all.size())]);
    return out;
  }

  // Large space: reject repeated index sets.
  std::set<std::vector<std::size_t>> seen;
  while (out.size() < n) {
    auto idx = RandomCombination(examples.size(), k, rng);
    if (seen.size() < total && !seen.insert(idx).second) continue;
    out.push_back(MakeContext(examples, idx));
  }
  return out;
}

Prompt Serialize(const Context& context, const CellValue& query) {
  Prompt p;
  p.text.append(kSos);
  for (const auto& ex : context) {
    AppendCell(ex.source, p.text);
    p.text.append(kTr);
    AppendCell(ex.target, p.text);
    p.text.append(kEoe);
  }
  AppendCell(query, p.text);
  p.text.append(kTr);
  p.text.append(kEos);
  return p;
}

LabelText SerializeLabel(const CellValue& target) {
  LabelText l;
  l.text.append(kSos);
  AppendCell(target, l.text);
  l.text.append(kEos);
  return l;
}

std::optional<CellValue> ParseOutput(std::string_view raw) {
  if (raw.substr(0, kSos.size()) == kSos) raw.remove_prefix(kSos.size());
  if (const auto eos = raw.find(kEos); eos != std::string_view::npos) {
    raw = raw.substr(0, eos);
  }
  if (raw.empty()) return std::nullopt;
  return CellValue(DecodeLenient(raw));
}

std::size_t RowLengthBound(std::size_t k, std::size_t model_tokens) {
  return model_tokens / (2 * k + 1);
}

std::vector<std::string> LintPromptLengths(const Context& context,
                                           const CellValue& query,
                                           std::size_t model_tokens) {
  const std::size_t bound = RowLengthBound(context.size(), model_tokens);
  std::vector<std::string> warnings;
  auto check = [&](const CellValue& cell, const std::string& what) {
    // Byte-level models see UTF-8 bytes, not scalars.
    const std::size_t bytes = cell.utf8().size();
    if (bytes > bound) {
      warnings.push_back(what + " is " + std::to_string(bytes) +
                         " bytes, above the per-row bound of " +
                         std::to_string(bound));
    }
  };
  for (std::size_t i = 0; i < context.size(); ++i) {
    check(context[i].source, "example " + std::to_string(i) + " source");
    check(context[i].target, "example " + std::to_string(i) + " target");
  }
  check(query, "query");
  return warnings;
}

}  // namespace tabxform

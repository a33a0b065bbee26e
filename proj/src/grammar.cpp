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

#include "tabxform/grammar.hpp"

#include <locale.h>

#include <algorithm>
#include <cwctype>

#include "json.hpp"

namespace tabxform {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kConfig, what);
}

[[noreturn]] void ParseFail(std::string_view text, std::size_t pos,
                            const std::string& what) {
  throw Error(ErrorCode::kParse, "cannot parse transformation '" +
                                     std::string(text) + "' at offset " +
                                     std::to_string(pos) + ": " + what);
}

void ValidateUnit(const Unit& unit) {
  if (const auto* s = std::get_if<Substr>(&unit)) {
    if (s->end && s->start > *s->end) Invalid("substr start exceeds end");
  } else if (const auto* l = std::get_if<Literal>(&unit)) {
    if (l->text.empty()) Invalid("literal text must be non-empty");
  }
}

locale_t CaseLocale() {
  static const locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
    if (l == static_cast<locale_t>(0)) {
      l = newlocale(LC_CTYPE_MASK, "C", static_cast<locale_t>(0));
    }
    return l;
  }();
  return loc;
}

}  // namespace

UnitChain::UnitChain(std::vector<Unit> units) : units_(std::move(units)) {
  if (units_.empty() || units_.size() > kMaxStack) {
    Invalid("a unit chain holds 1 to 3 units, got " +
            std::to_string(units_.size()));
  }
  for (std::size_t i = 0; i < units_.size(); ++i) {
    if (i > 0 && std::holds_alternative<Literal>(units_[i])) {
      Invalid("literal may only start a chain");
    }
    ValidateUnit(units_[i]);
  }
}

Transformation::Transformation(std::vector<UnitChain> chains)
    : chains_(std::move(chains)) {
  if (chains_.empty() || chains_.size() > kMaxChains) {
    Invalid("a transformation holds 1 to 6 chains, got " +
            std::to_string(chains_.size()));
  }
}

std::size_t Transformation::unit_count() const {
  std::size_t n = 0;
  for (const auto& c : chains_) n += c.size();
  return n;
}

char32_t ToLower(char32_t c) {
  if (c < 0x80) return (c >= U'A' && c <= U'Z') ? c + 32 : c;
  return static_cast<char32_t>(towlower_l(static_cast<wint_t>(c), CaseLocale()));
}

char32_t ToUpper(char32_t c) {
  if (c < 0x80) return (c >= U'a' && c <= U'z') ? c - 32 : c;
  return static_cast<char32_t>(towupper_l(static_cast<wint_t>(c), CaseLocale()));
}

std::u32string ApplyUnit(const Unit& unit, std::u32string_view input) {
  return std::visit(
      Overloaded{
          [&](const Substr& s) -> std::u32string {
            const std::size_t len = input.size();
            const std::size_t end = s.end ? std::min(*s.end, len) : len;
            if (s.start >= end) return {};
            return std::u32string(input.substr(s.start, end - s.start));
          },
          [&](const Split& s) -> std::u32string {
            std::size_t part = 0;
            std::size_t begin = 0;
            for (;;) {
              const std::size_t hit = input.find(s.delimiter, begin);
              const std::size_t stop =
                  hit == std::u32string_view::npos ? input.size() : hit;
              if (part == s.part) {
                return std::u32string(input.substr(begin, stop - begin));
              }
              if (hit == std::u32string_view::npos) return {};
              begin = hit + 1;
              ++part;
            }
          },
          [&](const Lower&) {
            std::u32string out(input);
            for (auto& c : out) c = ToLower(c);
            return out;
          },
          [&](const Upper&) {
            std::u32string out(input);
            for (auto& c : out) c = ToUpper(c);
            return out;
          },
          [&](const Literal& l) { return l.text; },
      },
      unit);
}

std::u32string ApplyChain(const UnitChain& chain, std::u32string_view input) {
  std::u32string value(input);
  for (const auto& unit : chain.units()) value = ApplyUnit(unit, value);
  return value;
}

std::u32string ApplyTransformation(const Transformation& t,
                                   std::u32string_view input) {
  std::u32string out;
  for (const auto& chain : t.chains()) out += ApplyChain(chain, input);
  return out;
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

void AppendQuoted(std::u32string_view text, std::string& out) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  out.push_back('\'');
  for (char32_t c : text) {
    switch (c) {
      case U'\\': out += "\\\\"; break;
      case U'\'': out += "\\'"; break;
      case U'\n': out += "\\n"; break;
      case U'\t': out += "\\t"; break;
      case U'\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          out += "\\u{";
          if (c >= 0x10) out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xF]);
          out.push_back('}');
        } else {
          AppendUtf8(c, out);
        }
    }
  }
  out.push_back('\'');
}

class TextParser {
 public:
  explicit TextParser(std::string_view text)
      : text_(text), chars_(DecodeUtf8(text)) {}

  Transformation ParseAll() {
    std::vector<UnitChain> chains;
    chains.push_back(ParseChainBody());
    SkipSpace();
    while (Consume(U'+')) {
      chains.push_back(ParseChainBody());
      SkipSpace();
    }
    ExpectEnd();
    return Transformation(std::move(chains));
  }

  UnitChain ParseOneChain() {
    UnitChain chain = ParseChainBody();
    SkipSpace();
    ExpectEnd();
    return chain;
  }

 private:
  UnitChain ParseChainBody() {
    std::vector<Unit> units;
    units.push_back(ParseUnit());
    SkipSpace();
    while (Consume(U'|')) units.push_back(ParseUnit());
    return UnitChain(std::move(units));
  }

  Unit ParseUnit() {
    SkipSpace();
    const std::u32string word = Word();
    if (word == U"lower") return Lower{};
    if (word == U"upper") return Upper{};
    if (word == U"substr") {
      Expect(U'(');
      Substr s;
      s.start = Number();
      Expect(U',');
      SkipSpace();
      if (Peek() == U'E') {
        if (Word() != U"END") Fail("expected END");
      } else {
        s.end = Number();
      }
      Expect(U')');
      return s;
    }
    if (word == U"split") {
      Expect(U'(');
      const std::u32string delim = Quoted();
      if (delim.size() != 1) Fail("split delimiter must be one character");
      Expect(U',');
      Split s{delim[0], Number()};
      Expect(U')');
      return s;
    }
    if (word == U"literal") {
      Expect(U'(');
      Literal l{Quoted()};
      Expect(U')');
      return l;
    }
    Fail("unknown unit '" + EncodeUtf8(word) + "'");
  }

  std::u32string Word() {
    std::u32string w;
    while (pos_ < chars_.size() &&
           ((chars_[pos_] >= U'a' && chars_[pos_] <= U'z') ||
            (chars_[pos_] >= U'A' && chars_[pos_] <= U'Z'))) {
      w.push_back(chars_[pos_++]);
    }
    if (w.empty()) Fail("expected a unit name");
    return w;
  }

  std::size_t Number() {
    SkipSpace();
    std::size_t v = 0;
    const std::size_t begin = pos_;
    while (pos_ < chars_.size() && chars_[pos_] >= U'0' &&
           chars_[pos_] <= U'9') {
      if (v > (SIZE_MAX - 9) / 10) Fail("number too large");
      v = v * 10 + (chars_[pos_++] - U'0');
    }
    if (pos_ == begin) Fail("expected a number");
    return v;
  }

  std::u32string Quoted() {
    SkipSpace();
    if (!Consume(U'\'')) Fail("expected a quoted string");
    std::u32string out;
    for (;;) {
      if (pos_ >= chars_.size()) Fail("unterminated string");
      char32_t c = chars_[pos_++];
      if (c == U'\'') return out;
      if (c != U'\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= chars_.size()) Fail("dangling escape");
      c = chars_[pos_++];
      switch (c) {
        case U'\\': out.push_back(U'\\'); break;
        case U'\'': out.push_back(U'\''); break;
        case U'n': out.push_back(U'\n'); break;
        case U't': out.push_back(U'\t'); break;
        case U'r': out.push_back(U'\r'); break;
        case U'u': {
          if (!Consume(U'{')) Fail("expected { after \\u");
          char32_t cp = 0;
          std::size_t digits = 0;
          while (pos_ < chars_.size() && chars_[pos_] != U'}') {
            const char32_t h = chars_[pos_++];
            int d;
            if (h >= U'0' && h <= U'9') d = h - U'0';
            else if (h >= U'A' && h <= U'F') d = h - U'A' + 10;
            else if (h >= U'a' && h <= U'f') d = h - U'a' + 10;
            else Fail("bad hex digit");
            cp = cp * 16 + d;
            if (++digits > 6) Fail("escape too long");
          }
          if (!Consume(U'}') || digits == 0) Fail("bad \\u escape");
          if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) Fail("escape is not a scalar value");
          out.push_back(cp);
          break;
        }
        default: Fail("unknown escape");
      }
    }
  }

  void SkipSpace() {
    while (pos_ < chars_.size() && (chars_[pos_] == U' ' || chars_[pos_] == U'\t'))
      ++pos_;
  }
  char32_t Peek() const { return pos_ < chars_.size() ? chars_[pos_] : 0; }
  bool Consume(char32_t c) {
    SkipSpace();
    if (Peek() != c) return false;
    ++pos_;
    return true;
  }
  void Expect(char32_t c) {
    if (!Consume(c)) {
      std::string s;
      AppendUtf8(c, s);
      Fail("expected '" + s + "'");
    }
  }
  void ExpectEnd() {
    if (pos_ != chars_.size()) Fail("trailing input");
  }
  [[noreturn]] void Fail(const std::string& what) { ParseFail(text_, pos_, what); }

  std::string_view text_;
  std::u32string chars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string ToText(const Unit& unit) {
  return std::visit(
      Overloaded{
          [](const Substr& s) {
            return "substr(" + std::to_string(s.start) + "," +
                   (s.end ? std::to_string(*s.end) : std::string("END")) + ")";
          },
          [](const Split& s) {
            std::string out = "split(";
            AppendQuoted(std::u32string(1, s.delimiter), out);
            return out + "," + std::to_string(s.part) + ")";
          },
          [](const Lower&) { return std::string("lower"); },
          [](const Upper&) { return std::string("upper"); },
          [](const Literal& l) {
            std::string out = "literal(";
            AppendQuoted(l.text, out);
            return out + ")";
          },
      },
      unit);
}

std::string ToText(const UnitChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out.push_back('|');
    out += ToText(chain.units()[i]);
  }
  return out;
}

std::string ToText(const Transformation& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += " + ";
    out += ToText(t.chains()[i]);
  }
  return out;
}

Transformation ParseTransformation(std::string_view text) {
  return TextParser(text).ParseAll();
}

UnitChain ParseChain(std::string_view text) {
  return TextParser(text).ParseOneChain();
}

// ---------------------------------------------------------------------------
// JSON form.

namespace {

using ojson = nlohmann::ordered_json;

ojson UnitToJson(const Unit& unit) {
  return std::visit(
      Overloaded{
          [](const Substr& s) {
            ojson j;
            j["op"] = "substr";
            j["start"] = s.start;
            j["end"] = s.end ? ojson(*s.end) : ojson(nullptr);
            return j;
          },
          [](const Split& s) {
            ojson j;
            j["op"] = "split";
            j["delimiter"] = EncodeUtf8(std::u32string(1, s.delimiter));
            j["part"] = s.part;
            return j;
          },
          [](const Lower&) { return ojson{{"op", "lower"}}; },
          [](const Upper&) { return ojson{{"op", "upper"}}; },
          [](const Literal& l) {
            ojson j;
            j["op"] = "literal";
            j["text"] = EncodeUtf8(l.text);
            return j;
          },
      },
      unit);
}

Unit UnitFromJson(const ojson& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "substr") {
    Substr s;
    s.start = j.at("start").get<std::size_t>();
    if (!j.at("end").is_null()) s.end = j.at("end").get<std::size_t>();
    return s;
  }
  if (op == "split") {
    const auto delim = DecodeUtf8(j.at("delimiter").get<std::string>());
    if (delim.size() != 1) {
      throw Error(ErrorCode::kParse, "split delimiter must be one character");
    }
    return Split{delim[0], j.at("part").get<std::size_t>()};
  }
  if (op == "lower") return Lower{};
  if (op == "upper") return Upper{};
  if (op == "literal") return Literal{DecodeUtf8(j.at("text").get<std::string>())};
  throw Error(ErrorCode::kParse, "unknown unit op '" + op + "'");
}

}  // namespace

std::string ToJson(const Transformation& t) {
  ojson chains = ojson::array();
  for (const auto& chain : t.chains()) {
    ojson units = ojson::array();
    for (const auto& u : chain.units()) units.push_back(UnitToJson(u));
    chains.push_back(std::move(units));
  }
  ojson root;
  root["chains"] = std::move(chains);
  return root.dump();
}

Transformation TransformationFromJson(std::string_view json) {
  ojson root;
  try {
    root = ojson::parse(json);
    std::vector<UnitChain> chains;
    for (const auto& jc : root.at("chains")) {
      std::vector<Unit> units;
      for (const auto& ju : jc) units.push_back(UnitFromJson(ju));
      chains.emplace_back(std::move(units));
    }
    return Transformation(std::move(chains));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad transformation JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Random generation.

std::u32string DefaultAlphabet() {
  std::u32string a;
  for (char32_t c = U'a'; c <= U'z'; ++c) a.push_back(c);
  for (char32_t c = U'A'; c <= U'Z'; ++c) a.push_back(c);
  for (char32_t c = U'0'; c <= U'9'; ++c) a.push_back(c);
  a += U" -_./,:;@#()";
  return a;
}

void GrammarConfig::Validate() const {
  if (max_stack < 1 || max_stack > kMaxStack) Invalid("max_stack must be in [1,3]");
  if (max_chains < 1 || max_chains > kMaxChains) Invalid("max_chains must be in [1,6]");
  if (param_bound < 1) Invalid("param_bound must be positive");
  if (split_part_bound < 1) Invalid("split_part_bound must be positive");
  if (delimiters.empty()) Invalid("delimiter set is empty");
  if (literal_alphabet.empty()) Invalid("literal alphabet is empty");
  if (max_literal_length < 1) Invalid("max_literal_length must be positive");
  if (literal_alphabet.find(U'<') != std::u32string::npos) {
    Invalid("literal alphabet may not contain '<'");
  }
}

namespace {

Unit RandomUnit(Rng& rng, const GrammarConfig& cfg, bool head) {
  // Kinds: 0 substr, 1 split, 2 lower, 3 upper, 4 literal (head only).
  const std::uint64_t kind = rng.Below(head ? 5 : 4);
  switch (kind) {
    case 0: {
      Substr s;
      s.start = rng.Below(cfg.param_bound);
      const std::uint64_t span = rng.Below(cfg.param_bound - s.start);
      if (span != 0) s.end = s.start + span;
      return s;
    }
    case 1:
      return Split{cfg.delimiters[rng.Below(cfg.delimiters.size())],
                   static_cast<std::size_t>(rng.Below(cfg.split_part_bound))};
    case 2: return Lower{};
    case 3: return Upper{};
    default: {
      Literal l;
      const std::size_t len = 1 + rng.Below(cfg.max_literal_length);
      for (std::size_t i = 0; i < len; ++i) {
        l.text.push_back(cfg.literal_alphabet[rng.Below(cfg.literal_alphabet.size())]);
      }
      return l;
    }
  }
}

}  // namespace

Transformation RandomTransformation(Rng& rng, const GrammarConfig& cfg,
                                    IntRange num_chains) {
  cfg.Validate();
  if (num_chains.lo < 1 || num_chains.hi < num_chains.lo ||
      num_chains.hi > static_cast<std::int64_t>(cfg.max_chains)) {
    Invalid("chain count range must lie within [1, max_chains]");
  }
  const auto count = static_cast<std::size_t>(rng.Between(num_chains.lo, num_chains.hi));
  std::vector<UnitChain> chains;
  chains.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t depth = 1 + rng.Below(cfg.max_stack);
    std::vector<Unit> units;
    for (std::size_t d = 0; d < depth; ++d) units.push_back(RandomUnit(rng, cfg, d == 0));
    chains.emplace_back(std::move(units));
  }
  return Transformation(std::move(chains));
}

CellValue RandomSource(Rng& rng, IntRange len_range, std::u32string_view alphabet) {
  if (len_range.lo < 1 || len_range.hi < len_range.lo || len_range.hi > 10000) {
    Invalid("source length range must lie within [1, 10000]");
  }
  if (alphabet.empty()) Invalid("source alphabet is empty");
  for (;;) {
    const auto len = static_cast<std::size_t>(rng.Between(len_range.lo, len_range.hi));
    std::u32string s(len, U'\0');
    for (auto& c : s) c = alphabet[rng.Below(alphabet.size())];
    if (!FindMarker(s)) return CellValue(std::move(s));
  }
}

}  // namespace tabxform

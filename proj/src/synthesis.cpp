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

#include "tabxform/synthesis.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tabxform {

void SynthesisConfig::Validate() const {
  grammar.Validate();
  if (max_candidates == 0) {
    throw Error(ErrorCode::kConfig, "max_candidates must be positive");
  }
  if (time_budget.count() <= 0) {
    throw Error(ErrorCode::kConfig, "time budget must be positive");
  }
}

namespace {

enum class Kind : std::uint8_t { kRoot, kSubstr, kSplit, kLower, kUpper };

bool IsCase(Kind k) { return k == Kind::kLower || k == Kind::kUpper; }

bool IsCased(char32_t c) { return ToLower(c) != c || ToUpper(c) != c; }

// Every scalar reachable from `c` through repeated case mapping.
void CaseClosure(char32_t c, std::unordered_set<char32_t>& out) {
  std::vector<char32_t> todo{c};
  while (!todo.empty()) {
    const char32_t x = todo.back();
    todo.pop_back();
    if (!out.insert(x).second) continue;
    todo.push_back(ToLower(x));
    todo.push_back(ToUpper(x));
  }
}

struct Span {
  std::uint32_t offset;
  std::uint32_t length;
};

struct Node {
  int parent;
  Unit unit;
  Kind kind;
  std::uint8_t depth;
  std::vector<Span> out;
  std::string text;
};

struct Cover {
  bool ok = false;
  std::size_t chains = 0;
  std::size_t units = 0;
  std::string text;
  int node = -1;             // producer used for the first step, or -1
  std::uint32_t literal = 0;  // literal length when node == -1
};

bool Better(std::size_t chains, std::size_t units, const std::string& text,
            const Cover& than) {
  if (!than.ok) return true;
  if (chains != than.chains) return chains < than.chains;
  if (units != than.units) return units < than.units;
  return text < than.text;
}

class BudgetExhausted {};

class Search {
 public:
  Search(const Context& context, const SynthesisConfig& cfg,
         SynthesisStats& stats)
      : cfg_(cfg), stats_(stats), k_(context.size()),
        start_time_(std::chrono::steady_clock::now()) {
    for (const auto& ex : context) {
      sources_.push_back(ex.source.text());
      targets_.push_back(ex.target.text());
    }
    scratch_.resize(k_);
  }

  std::optional<Transformation> Run() {
    if (k_ == 0 || !Feasible()) return std::nullopt;
    const std::size_t min_chains = MinChains();

    Node root{-1, Lower{}, Kind::kRoot, 0, {}, {}};
    for (const auto& s : sources_) root.out.push_back(Store(s));
    nodes_.push_back(std::move(root));

    std::optional<Transformation> best;
    std::size_t level_begin = 0;
    for (std::size_t level = 1; level <= cfg_.grammar.max_stack; ++level) {
      const std::size_t level_end = nodes_.size();
      bool exhausted = false;
      try {
        for (std::size_t base = level_begin; base < level_end; ++base) {
          if (nodes_[base].depth != level - 1) continue;
          Extend(static_cast<int>(base), level);
        }
        stats_.levels_completed = level;
      } catch (const BudgetExhausted&) {
        exhausted = true;
      }
      level_begin = level_end;
      best = SolveCover();
      if (exhausted || (best && best->size() == 1)) break;
      // A deeper chain costs at least chains + level units, so once the
      // chain count meets the lower bound the current best is final.
      if (best && best->size() <= min_chains &&
          best->unit_count() < best->size() + level) {
        break;
      }
    }
    stats_.chains_kept = nodes_.size() - 1;
    stats_.producers = producers_.size();
    if (best) CheckSound(*best);
    return best;
  }

 private:
  // Characters a program can emit for example j come from the source (up to
  // case mapping) or from literals, which every target must then share.
  bool Feasible() const {
    for (std::size_t j = 0; j < k_; ++j) {
      std::unordered_set<char32_t> producible;
      for (char32_t c : sources_[j]) CaseClosure(c, producible);
      for (char32_t c : targets_[j]) {
        if (producible.count(c)) continue;
        for (std::size_t other = 0; other < k_; ++other) {
          if (targets_[other].find(c) == std::u32string::npos) return false;
        }
      }
    }
    return true;
  }

  // Lower bound on the chain count of any consistent program. Each chain
  // emits, per example, a case-mapped window of the source or a constant
  // shared by every target, so a target needs at least as many pieces as
  // the fewest such windows that tile it.
  std::size_t MinChains() const {
    std::size_t bound = 1;
    for (std::size_t j = 0; j < k_; ++j) {
      const auto& src = sources_[j];
      const auto& tgt = targets_[j];
      std::vector<std::unordered_set<char32_t>> closure(src.size());
      for (std::size_t a = 0; a < src.size(); ++a) CaseClosure(src[a], closure[a]);
      std::vector<std::size_t> reach(tgt.size());
      for (std::size_t p = 0; p < tgt.size(); ++p) {
        std::size_t best = 0;
        for (std::size_t a = 0; a < src.size(); ++a) {
          std::size_t n = 0;
          while (p + n < tgt.size() && a + n < src.size() && closure[a + n].count(tgt[p + n])) ++n;
          best = std::max(best, n);
        }
        std::size_t lit = best;
        while (p + lit < tgt.size()) {
          const std::u32string_view piece(tgt.data() + p, lit + 1);
          bool shared = true;
          for (std::size_t o = 0; o < k_ && shared; ++o) {
            shared = targets_[o].find(piece) != std::u32string::npos;
          }
          if (!shared) break;
          ++lit;
        }
        reach[p] = p + lit;
      }
      // Fewest jumps to the end; pieces are closed under prefixes.
      std::size_t pieces = 0, covered = 0, frontier = 0;
      for (std::size_t p = 0; p < tgt.size() && covered < tgt.size(); ++p) {
        if (p > frontier) return kMaxChains + 1;  // unreachable; Feasible() normally rules this out
        frontier = std::max(frontier, reach[p]);
        if (p == covered) {
          ++pieces;
          covered = frontier;
        }
      }
      bound = std::max(bound, pieces);
    }
    return bound;
  }

  Span Store(std::u32string_view s) {
    Span span{static_cast<std::uint32_t>(pool_.size()),
              static_cast<std::uint32_t>(s.size())};
    pool_.append(s);
    return span;
  }

  std::u32string_view Out(int node, std::size_t j) const {
    const Span& s = nodes_[node].out[j];
    return {pool_.data() + s.offset, s.length};
  }

  void Spend() {
    ++stats_.candidates;
    if (stats_.candidates > cfg_.max_candidates) {
      stats_.budget_exhausted = true;
      throw BudgetExhausted{};
    }
    if ((stats_.candidates & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_time_ > cfg_.time_budget) {
      stats_.timed_out = true;
      throw BudgetExhausted{};
    }
  }

  void Extend(int base, std::size_t level) {
    const Kind prev = nodes_[base].kind;
    const bool last = level == cfg_.grammar.max_stack;
    std::size_t widest = 0;
    for (std::size_t j = 0; j < k_; ++j) widest = std::max(widest, Out(base, j).size());

    if (!IsCase(prev)) {
      Offer(base, Lower{}, Kind::kLower, last);
      Offer(base, Upper{}, Kind::kUpper, last);
    }

    if (prev != Kind::kSubstr && !IsCase(prev)) {
      if (prev == Kind::kRoot) Offer(base, Substr{0, 0}, Kind::kSubstr, last);
      for (std::size_t a = 0; a < widest; ++a) {
        for (std::size_t b = a + 1; b <= widest; ++b) {
          Substr s{a, b == widest ? std::nullopt : std::optional<std::size_t>(b)};
          const bool useful = Offer(base, s, Kind::kSubstr, last);
          if (last && cfg_.evidence_pruning && !useful && !AllEmpty()) break;
        }
      }
    }

    std::set<char32_t> delims;
    for (std::size_t j = 0; j < k_; ++j) {
      for (char32_t c : Out(base, j)) {
        if (!IsCase(prev) || IsCased(c)) delims.insert(c);
      }
    }
    for (char32_t c : delims) {
      std::size_t parts = 0;
      for (std::size_t j = 0; j < k_; ++j) {
        const auto w = Out(base, j);
        parts = std::max<std::size_t>(parts, std::count(w.begin(), w.end(), c));
      }
      for (std::size_t part = 0; part <= parts; ++part) {
        Offer(base, Split{c, part}, Kind::kSplit, last);
      }
    }
  }

  bool AllEmpty() const {
    return std::all_of(scratch_.begin(), scratch_.end(),
                       [](const auto& s) { return s.empty(); });
  }

  void Evaluate(int base, const Unit& unit) {
    for (std::size_t j = 0; j < k_; ++j) {
      const auto w = Out(base, j);
      auto& dst = scratch_[j];
      dst.clear();
      if (const auto* s = std::get_if<Substr>(&unit)) {
        const std::size_t end = s->end ? std::min(*s->end, w.size()) : w.size();
        if (s->start < end) dst.append(w.substr(s->start, end - s->start));
      } else if (const auto* sp = std::get_if<Split>(&unit)) {
        std::size_t begin = 0;
        for (std::size_t part = 0;; ++part) {
          const std::size_t hit = w.find(sp->delimiter, begin);
          if (part == sp->part) {
            const std::size_t stop = hit == std::u32string_view::npos ? w.size() : hit;
            dst.append(w.substr(begin, stop - begin));
            break;
          }
          if (hit == std::u32string_view::npos) break;
          begin = hit + 1;
        }
      } else if (std::holds_alternative<Lower>(unit)) {
        for (char32_t c : w) dst.push_back(ToLower(c));
      } else {
        for (char32_t c : w) dst.push_back(ToUpper(c));
      }
    }
  }

  std::uint64_t Hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& s : scratch_) {
      h = (h ^ s.size()) * 1099511628211ULL;
      for (char32_t c : s) h = (h ^ c) * 1099511628211ULL;
    }
    return h;
  }

  bool SameAsScratch(int node) const {
    for (std::size_t j = 0; j < k_; ++j) {
      if (Out(node, j) != std::u32string_view(scratch_[j])) return false;
    }
    return true;
  }

  bool ScratchIsProducer() const {
    bool any = false;
    for (std::size_t j = 0; j < k_; ++j) {
      if (scratch_[j].empty()) continue;
      if (targets_[j].find(scratch_[j]) == std::u32string::npos) return false;
      any = true;
    }
    return any;
  }

  std::string ChildText(int base, const Unit& unit) const {
    if (nodes_[base].kind == Kind::kRoot) return ToText(unit);
    return nodes_[base].text + "|" + ToText(unit);
  }

  // Evaluates one candidate chain. Returns whether its output is a segment
  // producer (or empty everywhere).
  bool Offer(int base, const Unit& unit, Kind kind, bool last) {
    Spend();
    Evaluate(base, unit);
    const bool producer = ScratchIsProducer();
    const bool empty = AllEmpty();
    // Final-level chains are never extended; keep only the useful ones.
    if (last && !producer && !empty) return false;

    const std::uint64_t h = Hash();
    auto& bucket = index_[h];
    const auto depth = static_cast<std::uint8_t>(nodes_[base].depth + 1);
    for (int id : bucket) {
      if (!SameAsScratch(id)) continue;
      Node& existing = nodes_[id];
      if (existing.depth == depth) {
        std::string text = ChildText(base, unit);
        if (text < existing.text) {
          existing.parent = base;
          existing.unit = unit;
          existing.kind = kind;
          existing.text = std::move(text);
        }
      }
      return producer || empty;
    }

    Node node{base, unit, kind, depth, {}, ChildText(base, unit)};
    node.out.reserve(k_);
    for (const auto& s : scratch_) node.out.push_back(Store(s));
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    bucket.push_back(id);
    if (producer) producers_.push_back(id);
    if (empty) empties_.push_back(id);
    return producer || empty;
  }

  std::vector<Unit> UnitsOf(int node) const {
    std::vector<Unit> units;
    for (int n = node; nodes_[n].kind != Kind::kRoot; n = nodes_[n].parent) {
      units.push_back(nodes_[n].unit);
    }
    std::reverse(units.begin(), units.end());
    return units;
  }

  const Cover& Solve(const std::vector<std::uint32_t>& pos) {
    if (auto it = memo_.find(pos); it != memo_.end()) return it->second;

    Cover best;
    bool done = true;
    for (std::size_t j = 0; j < k_; ++j) done &= pos[j] == targets_[j].size();
    if (done) {
      best.ok = true;
      return memo_.emplace(pos, std::move(best)).first->second;
    }

    std::vector<std::uint32_t> next(k_);
    auto consider = [&](const std::string& step, std::size_t step_units,
                        int node, std::uint32_t literal) {
      const Cover& rest = Solve(next);
      if (!rest.ok || rest.chains + 1 > cfg_.grammar.max_chains) return;
      const std::size_t chains = rest.chains + 1;
      const std::size_t units = rest.units + step_units;
      if (best.ok && (chains > best.chains ||
                      (chains == best.chains && units > best.units))) {
        return;
      }
      std::string text = rest.chains ? step + " + " + rest.text : step;
      if (Better(chains, units, text, best)) {
        best.ok = true;
        best.chains = chains;
        best.units = units;
        best.text = std::move(text);
        best.node = node;
        best.literal = literal;
      }
    };

    for (int id : producers_) {
      bool match = true;
      for (std::size_t j = 0; j < k_ && match; ++j) {
        const auto o = Out(id, j);
        const auto& t = targets_[j];
        match = pos[j] + o.size() <= t.size() &&
                t.compare(pos[j], o.size(), o.data(), o.size()) == 0;
        next[j] = pos[j] + static_cast<std::uint32_t>(o.size());
      }
      if (match) consider(nodes_[id].text, nodes_[id].depth, id, 0);
    }

    std::size_t lcp = targets_[0].size() - pos[0];
    for (std::size_t j = 1; j < k_; ++j) {
      std::size_t n = 0;
      const std::size_t limit = std::min(lcp, targets_[j].size() - pos[j]);
      while (n < limit && targets_[j][pos[j] + n] == targets_[0][pos[0] + n]) ++n;
      lcp = n;
    }
    for (std::uint32_t len = 1; len <= lcp; ++len) {
      for (std::size_t j = 0; j < k_; ++j) next[j] = pos[j] + len;
      Literal lit{targets_[0].substr(pos[0], len)};
      consider(ToText(Unit{lit}), 1, -1, len);
    }

    return memo_.emplace(pos, std::move(best)).first->second;
  }

  std::optional<Transformation> SolveCover() {
    memo_.clear();
    const std::vector<std::uint32_t> origin(k_, 0);
    const Cover& root = Solve(origin);
    if (!root.ok) return std::nullopt;

    std::vector<UnitChain> chains;
    if (root.chains == 0) {
      // Every target is empty: the smallest chain that is empty everywhere.
      int pick = -1;
      for (int id : empties_) {
        if (pick < 0 || nodes_[id].depth < nodes_[pick].depth ||
            (nodes_[id].depth == nodes_[pick].depth &&
             nodes_[id].text < nodes_[pick].text)) {
          pick = id;
        }
      }
      if (pick < 0) return std::nullopt;
      chains.emplace_back(UnitsOf(pick));
      return Transformation(std::move(chains));
    }

    std::vector<std::uint32_t> pos = origin;
    for (;;) {
      const Cover& step = memo_.at(pos);
      if (step.chains == 0) break;
      if (step.node >= 0) {
        chains.emplace_back(UnitsOf(step.node));
        for (std::size_t j = 0; j < k_; ++j) {
          pos[j] += static_cast<std::uint32_t>(Out(step.node, j).size());
        }
      } else {
        chains.emplace_back(std::vector<Unit>{
            Literal{targets_[0].substr(pos[0], step.literal)}});
        for (std::size_t j = 0; j < k_; ++j) pos[j] += step.literal;
      }
    }
    return Transformation(std::move(chains));
  }

  void CheckSound(const Transformation& t) const {
    for (std::size_t j = 0; j < k_; ++j) {
      if (ApplyTransformation(t, sources_[j]) != targets_[j]) {
        throw std::logic_error("synthesized program " + ToText(t) +
                               " is inconsistent with its context");
      }
    }
  }

  const SynthesisConfig& cfg_;
  SynthesisStats& stats_;
  std::size_t k_;
  std::chrono::steady_clock::time_point start_time_;
  std::vector<std::u32string> sources_;
  std::vector<std::u32string> targets_;
  std::vector<std::u32string> scratch_;
  std::u32string pool_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::vector<int>> index_;
  std::vector<int> producers_;
  std::vector<int> empties_;
  std::map<std::vector<std::uint32_t>, Cover> memo_;
};

}  // namespace

std::optional<Transformation> SynthesizeTransformation(
    const Context& context, const SynthesisConfig& cfg, SynthesisStats* stats) {
  cfg.Validate();
  SynthesisStats local;
  Search search(context, cfg, stats ? *stats : local);
  return search.Run();
}

}  // namespace tabxform

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

// Example-driven search for a grammar program consistent with a context.
//
// The search runs in two phases.
//
// 1. Chain enumeration. Unit chains are built bottom-up, one stacking level
//    at a time, and evaluated on every context source. Chains with identical
//    outputs on all sources are merged, keeping the one with fewer units and
//    then the smaller text form. Stacks that cannot add behaviour are never
//    built: substr after substr or after a case unit, two case units in a
//    row, and split on an uncased delimiter after a case unit. Substr end
//    indices are only enumerated below the longest input; beyond that END is
//    used. A chain whose output on every example is a substring of that
//    example's target is a segment producer.
//
// 2. Segment cover. A program is a path through target position tuples
//    (one position per example) where each step is a producer or a literal
//    that matches at the current position in every target. A memoized
//    search over tuples picks the path minimal by (chain count, unit count,
//    canonical text).
//
// After each enumeration level the cover is recomputed; a single-chain
// answer cannot be beaten by deeper chains, so the search stops there.

#ifndef TABXFORM_SYNTHESIS_HPP_
#define TABXFORM_SYNTHESIS_HPP_

#include <chrono>
#include <cstddef>
#include <optional>

#include "tabxform/core.hpp"
#include "tabxform/grammar.hpp"

namespace tabxform {

struct SynthesisConfig {
  GrammarConfig grammar;
  // Budget on candidate chains evaluated per context.
  std::size_t max_candidates = 200000;
  // Wall-clock guard. Results that hit it depend on machine speed, so the
  // candidate budget should bind first.
  std::chrono::milliseconds time_budget{2000};
  // Cut substr windows at the last stacking level as soon as the growing
  // window stops being a substring of the target.
  bool evidence_pruning = true;

  void Validate() const;
};

struct SynthesisStats {
  std::size_t candidates = 0;
  std::size_t chains_kept = 0;
  std::size_t producers = 0;
  std::size_t levels_completed = 0;
  bool budget_exhausted = false;
  bool timed_out = false;
};

// Minimal consistent program, or nullopt if none was found within budget.
// Any returned program reproduces every context target exactly.
std::optional<Transformation> SynthesizeTransformation(
    const Context& context, const SynthesisConfig& cfg,
    SynthesisStats* stats = nullptr);

}  // namespace tabxform

#endif  // TABXFORM_SYNTHESIS_HPP_

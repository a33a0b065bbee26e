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

#ifndef TABXFORM_RNG_HPP_
#define TABXFORM_RNG_HPP_

#include <cstdint>
#include <initializer_list>

#include "tabxform/core.hpp"

namespace tabxform {

// SplitMix64 (Steele, Lea & Flood 2014). The state is a Weyl counter with
// increment 0x9E3779B97F4A7C15; each output is the counter passed through
// the finalizer
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
// Only 64-bit unsigned arithmetic is used, so streams are identical on every
// platform. Bounded draws use rejection sampling (never std:: distributions,
// whose output is implementation-defined).
class Rng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit Rng(Seed seed) : state_(seed.value) {}

  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t Next() {
    state_ += kGamma;
    return Mix(state_);
  }

  // Uniform in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = Next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [lo, hi], inclusive.
  std::int64_t Between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    Below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double Unit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Child generator for an indexed sub-task; independent of how many
  // draws the parent has made.
  static Seed Derive(Seed parent, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = Mix(parent.value ^ 0x6A09E667F3BCC909ULL);
    for (std::uint64_t tag : path) h = Mix(h + kGamma * (tag + 1));
    return Seed{h};
  }

 private:
  std::uint64_t state_;
};

}  // namespace tabxform

#endif  // TABXFORM_RNG_HPP_

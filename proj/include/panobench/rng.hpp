// Copyright 2026 The PanoBench Authors.
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

#pragma once

#include <cstdint>

namespace panobench {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based pseudo-random stream.
//
// Draw i for seed s is defined as mix64(s + (i + 1) * GOLDEN_GAMMA). Pure
// integer arithmetic: the stream is bit-identical across platforms and any
// draw can be evaluated in isolation, so a consumer that records (seed,
// counter) can reproduce a single decision without replaying the stream.
// This mapping is part of the serialized mask-record contract; changing it
// is a file-format break.
class CounterRng {
 public:
  static constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

  constexpr explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }

  constexpr std::uint64_t bits(std::uint64_t index) const noexcept {
    return mix64(seed_ + (index + 1) * kGoldenGamma);
  }

  // Uniform double in [0, 1), from the top 53 bits of the draw.
  constexpr double uniform(std::uint64_t index) const noexcept {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  // True with probability p. p <= 0 never fires, p >= 1 always fires.
  constexpr bool bernoulli(std::uint64_t index, double p) const noexcept {
    return uniform(index) < p;
  }

  // Uniform integer in [0, n). n must be positive.
  constexpr std::uint64_t below(std::uint64_t index, std::uint64_t n) const noexcept {
    const std::uint64_t v = static_cast<std::uint64_t>(uniform(index) * static_cast<double>(n));
    return v >= n ? n - 1 : v;
  }

 private:
  std::uint64_t seed_;
};

}  // namespace panobench

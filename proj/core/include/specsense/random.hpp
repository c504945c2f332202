// Copyright 2026 The specsense Authors.
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
#include <initializer_list>
#include <random>

namespace specsense {

/// splitmix64 finalizer. Bijective on 64-bit words.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a sequence of words into one key. Order-sensitive.
[[nodiscard]] constexpr std::uint64_t hash_words(
    std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t w : words) {
    h = mix64(h ^ mix64(w));
  }
  return h;
}

//---------------------------------------------------------------------------//
/*!
 * Deterministic random stream owned by a single caller.
 *
 * A stream is fully determined by its 64-bit key; there is no global engine.
 * Monte Carlo trials derive their key from (seed, condition, hypothesis,
 * trial index) via hash_words, so a trial's draws do not depend on which
 * thread runs it or in what order.
 */
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : engine_(mix64(key)) {}

  /// Standard normal variate.
  double gaussian() { return normal_(engine_); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  /// Uniform sign, +1 or -1.
  double sign() { return below(2) == 0 ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace specsense

// Copyright 2026 The entcorr Authors
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

#include <array>
#include <cstdint>
#include <limits>

namespace entcorr {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block is a
/// pure function of (counter, key), so any stream position can be computed
/// independently of every other.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Block generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * counter[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * counter[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
    }
    return counter;
  }
};

/// Stream domains; each use of randomness in the library draws from its own
/// domain so streams never overlap.
enum class StreamDomain : std::uint32_t {
  kShots = 0,
  kBootstrap = 1,
  kScheduleSeed = 2,
  kRoofRestart = 3,
};

/// One stream of the generator: key = seed, counter = (position, domain, sub).
/// Satisfies UniformRandomBitGenerator so it can drive <random> distributions.
class CounterStream {
 public:
  using result_type = std::uint32_t;

  CounterStream(std::uint64_t seed, StreamDomain domain, std::uint32_t sub)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        domain_(static_cast<std::uint32_t>(domain)),
        sub_(sub) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Block at an explicit position; does not advance the stream.
  Philox4x32::Block block(std::uint64_t position) const {
    return Philox4x32::generate(
        {static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(position >> 32), domain_, sub_}, key_);
  }

  /// Uniform double in [0, 1) with 53 random bits, taken from one block.
  double uniform_at(std::uint64_t position) const { return to_unit(block(position)); }

  std::uint64_t bits64_at(std::uint64_t position) const {
    const auto b = block(position);
    return (std::uint64_t{b[1]} << 32) | b[0];
  }

  result_type operator()() {
    if (used_ == 4) {
      buffer_ = block(position_++);
      used_ = 0;
    }
    return buffer_[used_++];
  }

  double uniform() {
    const std::uint64_t hi = (*this)();
    const std::uint64_t lo = (*this)();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }

 private:
  static double to_unit(const Philox4x32::Block& b) {
    const std::uint64_t bits = (std::uint64_t{b[1]} << 32) | b[0];
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint32_t domain_;
  std::uint32_t sub_;
  std::uint64_t position_ = 0;
  Philox4x32::Block buffer_{};
  int used_ = 4;
};

}  // namespace entcorr

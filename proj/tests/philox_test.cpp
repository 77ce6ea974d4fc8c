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

#include "entcorr/philox.hpp"

#include <set>

#include <gtest/gtest.h>

namespace entcorr {
namespace {

using Block = Philox4x32::Block;

// Published known-answer vectors for Philox4x32-10.
TEST(Philox, KnownAnswerZero) {
  const Block out = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const Block out = Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const Block out =
      Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterStream, PositionalAccessIsPure) {
  const CounterStream s(42, StreamDomain::kShots, 0);
  EXPECT_EQ(s.block(7), s.block(7));
  EXPECT_EQ(s.uniform_at(123), CounterStream(42, StreamDomain::kShots, 0).uniform_at(123));
}

TEST(CounterStream, SequentialMatchesBlocks) {
  CounterStream s(9, StreamDomain::kBootstrap, 3);
  const CounterStream ref(9, StreamDomain::kBootstrap, 3);
  for (std::uint64_t pos = 0; pos < 5; ++pos) {
    const Block b = ref.block(pos);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(s(), b[i]);
  }
}

TEST(CounterStream, DomainsSeedsAndSubstreamsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed : {0ull, 1ull, 0x100000000ull})
    for (auto d : {StreamDomain::kShots, StreamDomain::kBootstrap, StreamDomain::kScheduleSeed, StreamDomain::kRoofRestart})
      for (std::uint32_t sub : {0u, 1u}) seen.insert(CounterStream(seed, d, sub).bits64_at(0));
  EXPECT_EQ(seen.size(), 24u);
}

TEST(CounterStream, UniformRangeAndMean) {
  const CounterStream s(1, StreamDomain::kShots, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform_at(static_cast<std::uint64_t>(i));
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Standard error of the mean is about 6.5e-4.
  EXPECT_NEAR(sum / n, 0.5, 5e-3);
}

}  // namespace
}  // namespace entcorr

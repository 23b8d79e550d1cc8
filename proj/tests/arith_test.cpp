/*
Copyright 2026 The VCMF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "vcmf/arith.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vcmf/error.hpp"

namespace vcmf {
namespace {

struct StaticModel {
  std::vector<std::uint32_t> cum;  // cum[s]..cum[s+1] is symbol s
  std::uint32_t total() const { return cum.back(); }
};

StaticModel make_model(std::mt19937& rng) {
  StaticModel m{{0}};
  const int n = 2 + static_cast<int>(rng() % 30);
  for (int i = 0; i < n; ++i) m.cum.push_back(m.cum.back() + 1 + rng() % 500);
  return m;
}

std::vector<int> draw(const StaticModel& m, std::mt19937& rng, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i) {
    const std::uint32_t r = rng() % m.total();
    int s = 0;
    while (m.cum[s + 1] <= r) ++s;
    out.push_back(s);
  }
  return out;
}

std::vector<std::uint8_t> encode_all(const StaticModel& m, const std::vector<int>& syms) {
  ArithmeticEncoder enc;
  for (int s : syms) enc.encode(m.cum[s], m.cum[s + 1], m.total());
  return enc.finish();
}

std::vector<int> decode_all(const StaticModel& m, std::span<const std::uint8_t> bytes,
                            std::size_t count) {
  ArithmeticDecoder dec(bytes);
  std::vector<int> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t t = dec.target(m.total());
    int s = 0;
    while (m.cum[s + 1] <= t) ++s;
    dec.consume(m.cum[s], m.cum[s + 1], m.total());
    out.push_back(s);
  }
  dec.expect_end();
  return out;
}

TEST(Arithmetic, EmptyStreamIsOneByte) {
  ArithmeticEncoder enc;
  const auto bytes = enc.finish();
  EXPECT_EQ(bytes.size(), 1u);
  ArithmeticDecoder dec(bytes);
  EXPECT_NO_THROW(dec.expect_end());
}

TEST(Arithmetic, LengthWithinTwoBytesOfInformationContent) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const StaticModel m = make_model(rng);
    const auto syms = draw(m, rng, 500 + static_cast<int>(rng() % 5000));
    double bits = 0.0;
    for (int s : syms) {
      bits -= std::log2(static_cast<double>(m.cum[s + 1] - m.cum[s]) / m.total());
    }
    const auto bytes = encode_all(m, syms);
    EXPECT_LE(static_cast<double>(bytes.size()), bits / 8.0 + 2.0) << "trial " << trial;
    EXPECT_EQ(decode_all(m, bytes, syms.size()), syms);
  }
}

TEST(Arithmetic, SkewedModelRoundTrips) {
  StaticModel m{{0, 65000, 65535}};
  std::vector<int> syms(20000, 0);
  syms[777] = 1;
  syms[19999] = 1;
  const auto bytes = encode_all(m, syms);
  EXPECT_EQ(decode_all(m, bytes, syms.size()), syms);
}

TEST(Arithmetic, RejectsTruncatedAndPaddedStreams) {
  std::mt19937 rng(9);
  const StaticModel m = make_model(rng);
  const auto syms = draw(m, rng, 300);
  const auto bytes = encode_all(m, syms);
  ASSERT_GT(bytes.size(), 4u);
  for (std::size_t len = 0; len < bytes.size(); ++len) {
    const std::span<const std::uint8_t> prefix(bytes.data(), len);
    EXPECT_THROW(decode_all(m, prefix, syms.size()), Error) << "prefix " << len;
  }
  auto padded = bytes;
  padded.push_back(0);
  EXPECT_THROW(decode_all(m, padded, syms.size()), Error);
}

}  // namespace
}  // namespace vcmf

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

#include "vcmf/ppm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vcmf/edge.hpp"
#include "vcmf/synth.hpp"
#include "vcmf/vectorize.hpp"

namespace vcmf {
namespace {

std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t n, int alphabet = 256) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng() % alphabet);
  return out;
}

TEST(Ppm, EmptyInput) {
  const auto packed = ppm_compress({});
  EXPECT_FALSE(packed.empty());
  EXPECT_TRUE(ppm_decompress(packed).empty());
}

TEST(Ppm, RandomKilobyteRoundTrips) {
  std::mt19937 rng(1);
  const auto data = random_bytes(rng, 1024);
  EXPECT_EQ(ppm_decompress(ppm_compress(data)), data);
}

TEST(Ppm, RandomStringsRoundTripAtSeveralOrders) {
  std::mt19937 rng(77);
  for (int i = 0; i < 100; ++i) {
    const auto data =
        random_bytes(rng, rng() % 4097, 1 + static_cast<int>(rng() % 256));
    const PpmConfig cfg{static_cast<int>(i % 5), PpmConfig{}.max_output};
    EXPECT_EQ(ppm_decompress(ppm_compress(data, cfg), cfg), data) << "string " << i;
  }
}

TEST(Ppm, RepetitiveInputMatchesCodedInformation) {
  const std::vector<std::uint8_t> data(1000, 'a');
  double bits = 0.0;
  const auto packed = ppm_compress(data, {}, {}, [&](std::uint32_t lo, std::uint32_t hi,
                                                     std::uint32_t total) {
    bits -= std::log2(static_cast<double>(hi - lo) / total);
  });
  EXPECT_LT(packed.size(), 50u);
  EXPECT_LE(static_cast<double>(packed.size()), bits / 8.0 + 2.0);
  EXPECT_EQ(ppm_decompress(packed), data);
}

TEST(Ppm, EveryTruncatedPrefixFails) {
  std::mt19937 rng(4);
  const auto data = random_bytes(rng, 600, 16);
  const auto packed = ppm_compress(data);
  for (std::size_t len = 0; len < packed.size(); ++len) {
    const std::span<const std::uint8_t> prefix(packed.data(), len);
    EXPECT_THROW(ppm_decompress(prefix), Error) << "prefix " << len;
  }
}

TEST(Ppm, OutputLimitEnforced) {
  const std::vector<std::uint8_t> data(500, 'x');
  const auto packed = ppm_compress(data);
  PpmConfig cfg;
  cfg.max_output = 499;
  EXPECT_THROW(ppm_decompress(packed, cfg), Error);
  cfg.max_output = 500;
  EXPECT_EQ(ppm_decompress(packed, cfg), data);
}

TEST(Ppm, MismatchedOrderNeverCrashes) {
  std::mt19937 rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto data = random_bytes(rng, 200 + rng() % 800, 8);
    const auto packed = ppm_compress(data, PpmConfig{3});
    PpmConfig other{1};
    other.max_output = 4096;
    try {
      const auto out = ppm_decompress(packed, other);
      EXPECT_LE(out.size(), other.max_output);
    } catch (const Error&) {
    }
  }
}

TEST(Ppm, EncoderAndDecoderModelsStayIdentical) {
  std::mt19937 rng(12);
  const auto data = random_bytes(rng, 3000, 40);
  std::vector<std::uint64_t> enc_prints;
  std::vector<std::uint64_t> dec_prints;
  const auto packed =
      ppm_compress(data, {}, [&](const PpmModel& m) { enc_prints.push_back(m.fingerprint()); });
  ppm_decompress(packed, {}, [&](const PpmModel& m) { dec_prints.push_back(m.fingerprint()); });
  ASSERT_EQ(enc_prints.size(), data.size());
  EXPECT_EQ(enc_prints, dec_prints);
  EXPECT_NE(enc_prints.front(), enc_prints.back());
}

TEST(Ppm, CountsStayBoundedOnLongRuns) {
  std::vector<std::uint8_t> data(200000, 'z');
  for (std::size_t i = 0; i < data.size(); i += 997) data[i] = 'y';
  EXPECT_EQ(ppm_decompress(ppm_compress(data)), data);
}

TEST(Ppm, SerializedDrawingsCompress) {
  for (std::uint32_t seed = 1; seed <= 3; ++seed) {
    const RasterImage img = synth::face_like(seed);
    const BinaryMap edges = extract_edge_map(to_grayscale(img), EdgeParams{});
    const auto params = serialize_params(fit_paths(trace_chains(edges), img.width(), img.height()));
    ASSERT_FALSE(params.empty());
    const auto packed = ppm_compress(params);
    EXPECT_LT(packed.size(), params.size());
    EXPECT_EQ(ppm_decompress(packed), params);
  }
}

}  // namespace
}  // namespace vcmf

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

#include "vcmf/image.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>

namespace vcmf {
namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header,
                                   std::initializer_list<std::uint8_t> payload) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

ErrorCode code_of(const std::vector<std::uint8_t>& data) {
  try {
    decode_pnm(data);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a parse error";
  return ErrorCode::kInvalidArgument;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vcmf_image_test_" + name);
}

TEST(LoadImage, ParsesColorHeader) {
  const auto img = decode_pnm(bytes_of("P6 2 1 255\n", {1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(img.width(), 2);
  EXPECT_EQ(img.height(), 1);
  EXPECT_EQ(img.channels(), 3);
  EXPECT_EQ(img.at(1, 0, 2), 6);
}

TEST(LoadImage, ParsesGrayHeader) {
  const auto img = decode_pnm(bytes_of("P5 1 1 255\n", {0x80}));
  EXPECT_EQ(img.channels(), 1);
  EXPECT_EQ(img.at(0, 0), 128);
}

TEST(LoadImage, SkipsComments) {
  const auto img = decode_pnm(bytes_of("P5\n# made by hand\n1 1\n255\n", {7}));
  EXPECT_EQ(img.at(0, 0), 7);
}

TEST(LoadImage, DistinctErrors) {
  EXPECT_EQ(code_of(bytes_of("P7 1 1 255\n", {0})), ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(code_of(bytes_of("GIF89a", {})), ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(code_of(bytes_of("P5 x 1 255\n", {0})), ErrorCode::kMalformedHeader);
  EXPECT_EQ(code_of(bytes_of("P5 0 1 255\n", {})), ErrorCode::kMalformedHeader);
  EXPECT_EQ(code_of(bytes_of("P5 1 1 65535\n", {0, 0})), ErrorCode::kUnsupportedMaxValue);
  EXPECT_EQ(code_of(bytes_of("P6 2 2 255\n", {1, 2, 3})), ErrorCode::kTruncatedPayload);
}

TEST(LoadImage, MissingFileIsIoError) {
  try {
    load_image(temp_path("does_not_exist.ppm"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.is_io());
  }
}

TEST(SaveImage, ChannelCountPicksVariant) {
  const auto gray = encode_pnm(RasterImage(3, 2, 1, 9));
  const auto color = encode_pnm(RasterImage(3, 2, 3, 9));
  EXPECT_EQ(std::string(gray.begin(), gray.begin() + 2), "P5");
  EXPECT_EQ(std::string(color.begin(), color.begin() + 2), "P6");
}

TEST(SaveImage, RoundTripsRandomImages) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 40);
    const int h = 1 + static_cast<int>(rng() % 40);
    const int c = rng() % 2 ? 3 : 1;
    RasterImage img(w, h, c);
    for (auto& s : img.samples()) s = static_cast<std::uint8_t>(rng());
    const auto path = temp_path("rt" + std::to_string(trial) + ".pnm");
    save_image(img, path);
    EXPECT_EQ(load_image(path), img);
    // load then save reproduces the file bytes.
    const auto bytes = read_file(path);
    EXPECT_EQ(encode_pnm(decode_pnm(bytes)), bytes);
    std::filesystem::remove(path);
  }
}

TEST(ToGrayscale, Bt601Weights) {
  RasterImage img(3, 1, 3);
  img.at(0, 0, 0) = img.at(0, 0, 1) = img.at(0, 0, 2) = 255;
  img.at(2, 0, 0) = 255;
  const auto g = to_grayscale(img);
  EXPECT_EQ(g.channels(), 1);
  EXPECT_EQ(g.at(0, 0), 255);
  EXPECT_EQ(g.at(1, 0), 0);
  EXPECT_EQ(g.at(2, 0), 76);  // round(76.245)
}

TEST(ToGrayscale, IdempotentOnGray) {
  RasterImage img(4, 4, 1);
  for (int i = 0; i < 16; ++i) img.samples()[i] = static_cast<std::uint8_t>(i * 13);
  EXPECT_EQ(to_grayscale(img), img);
  EXPECT_EQ(to_grayscale(to_grayscale(img)), img);
}

TEST(RasterImage, RejectsBadShapes) {
  EXPECT_THROW(RasterImage(0, 1, 1), Error);
  EXPECT_THROW(RasterImage(1, 1, 2), Error);
  EXPECT_THROW(RasterImage(2, 2, 1, std::vector<std::uint8_t>(3)), Error);
}

}  // namespace
}  // namespace vcmf

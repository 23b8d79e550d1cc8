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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vcmf/error.hpp"

namespace vcmf {

// 8-bit sample grid, row-major, channels interleaved.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, int channels, std::uint8_t fill = 0)
      : width_(width), height_(height), channels_(channels) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
    }
    if (channels != 1 && channels != 3) {
      throw Error(ErrorCode::kInvalidArgument, "channels must be 1 or 3");
    }
    samples_.assign(static_cast<std::size_t>(width) * height * channels, fill);
  }
  RasterImage(int width, int height, int channels,
              std::vector<std::uint8_t> samples)
      : RasterImage(width, height, channels) {
    if (samples.size() != samples_.size()) {
      throw Error(ErrorCode::kShapeMismatch, "sample count does not match shape");
    }
    samples_ = std::move(samples);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return samples_.empty(); }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * height_;
  }
  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::uint8_t& at(int x, int y, int c = 0) {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> samples() { return samples_; }

  bool operator==(const RasterImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> samples_;
};

// One bit per pixel, row-major. Stored as bytes (0/1) for cheap indexing.
class BinaryMap {
 public:
  BinaryMap() = default;
  BinaryMap(int width, int height)
      : width_(width),
        height_(height),
        bits_(static_cast<std::size_t>(width) * height, 0) {
    if (width < 0 || height < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative map dimensions");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  bool get(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  // Out-of-bounds reads are false; handy for neighborhood scans.
  bool test(int x, int y) const { return contains(x, y) && get(x, y); }
  void set(int x, int y, bool value = true) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }
  bool none() const { return count() == 0; }

  std::span<const std::uint8_t> bits() const { return bits_; }

  bool operator==(const BinaryMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

// BT.601 luma, rounded half up. Identity on 1-channel input.
inline RasterImage to_grayscale(const RasterImage& img) {
  if (img.channels() == 1) return img;
  RasterImage out(img.width(), img.height(), 1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double luma = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                          0.114 * img.at(x, y, 2);
      out.at(x, y) = static_cast<std::uint8_t>(std::floor(luma + 0.5));
    }
  }
  return out;
}

// 0 / 255 gray rendering of a binary map (debug export and E/M files).
inline RasterImage map_to_image(const BinaryMap& map) {
  RasterImage out(map.width(), map.height(), 1);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      out.at(x, y) = map.get(x, y) ? 255 : 0;
    }
  }
  return out;
}

// Any nonzero gray sample is a set bit.
inline BinaryMap image_to_map(const RasterImage& img) {
  if (img.channels() != 1) {
    throw Error(ErrorCode::kShapeMismatch, "binary maps load from 1-channel images");
  }
  BinaryMap out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.set(x, y, img.at(x, y) != 0);
  }
  return out;
}

namespace detail {

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> data) : data_(data) {}

  // Reads one decimal header field, skipping whitespace and '#' comments.
  int field() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || data_[pos_] < '0' || data_[pos_] > '9') {
      throw Error(ErrorCode::kMalformedHeader, "expected a decimal header field");
    }
    long value = 0;
    while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
      value = value * 10 + (data_[pos_] - '0');
      if (value > 1'000'000) {
        throw Error(ErrorCode::kMalformedHeader, "header field too large");
      }
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the max value from the raster.
  void single_whitespace() {
    if (pos_ >= data_.size() || !is_space(data_[pos_])) {
      throw Error(ErrorCode::kMalformedHeader, "missing whitespace after max value");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (is_space(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 2;
};

}  // namespace detail

// Parses binary PNM (P5 gray or P6 color, max value 255) from memory.
inline RasterImage decode_pnm(std::span<const std::uint8_t> data) {
  if (data.size() < 2 || data[0] != 'P') {
    throw Error(ErrorCode::kUnsupportedFormat, "not a PNM file");
  }
  int channels = 0;
  if (data[1] == '5') {
    channels = 1;
  } else if (data[1] == '6') {
    channels = 3;
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                std::string("unsupported PNM variant P") +
                    static_cast<char>(data[1]));
  }
  detail::PnmHeaderReader reader(data);
  const int width = reader.field();
  const int height = reader.field();
  const int max_value = reader.field();
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kMalformedHeader, "zero image dimension");
  }
  if (max_value != 255) {
    throw Error(ErrorCode::kUnsupportedMaxValue,
                "max value " + std::to_string(max_value) + " (only 255 supported)");
  }
  reader.single_whitespace();
  const std::size_t payload =
      static_cast<std::size_t>(width) * height * channels;
  const std::size_t available = data.size() - reader.position();
  if (available < payload) {
    throw Error(ErrorCode::kTruncatedPayload,
                "expected " + std::to_string(payload) + " sample bytes, found " +
                    std::to_string(available));
  }
  auto first = data.begin() + static_cast<std::ptrdiff_t>(reader.position());
  return RasterImage(width, height, channels,
                     std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(payload)));
}

inline std::vector<std::uint8_t> encode_pnm(const RasterImage& img) {
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.samples().begin(), img.samples().end());
  return out;
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

// Writes through a sibling temporary and renames, so a failed write never
// leaves a partial file at `path`.
inline void write_file(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kIo, "write failed: " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot move into place: " + path.string());
  }
}

inline RasterImage load_image(const std::filesystem::path& path) {
  return decode_pnm(read_file(path));
}

inline void save_image(const RasterImage& img, const std::filesystem::path& path) {
  if (img.empty()) throw Error(ErrorCode::kInvalidArgument, "empty image");
  write_file(path, encode_pnm(img));
}

}  // namespace vcmf

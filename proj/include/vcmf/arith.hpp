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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vcmf/error.hpp"

namespace vcmf {

// Binary arithmetic coder over 32-bit low/high registers with underflow
// (pending-bit) handling, in the style of Witten, Neal and Cleary. Symbol
// intervals are given as cumulative counts [low, high) out of `total`;
// totals must stay below 2^16 so the interval never collapses.
//
// Every renormalization shift accounts for exactly one output bit and the
// flush adds two, so a stream of S shifts is ceil((S + 2) / 8) bytes long.
// The decoder uses this to reject truncated or padded input.
namespace arith {

inline constexpr std::uint64_t kTop = 0xFFFFFFFFull;
inline constexpr std::uint64_t kHalf = 0x80000000ull;
inline constexpr std::uint64_t kQuarter = 0x40000000ull;
inline constexpr std::uint64_t kThreeQuarters = 0xC0000000ull;
inline constexpr std::uint32_t kMaxTotal = 1u << 16;

}  // namespace arith

class ArithmeticEncoder {
 public:
  // Optional observer of every coded interval, for cost accounting in tests.
  using Trace = std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)>;

  explicit ArithmeticEncoder(Trace trace = {}) : trace_(std::move(trace)) {}

  void encode(std::uint32_t cum_low, std::uint32_t cum_high, std::uint32_t total) {
    if (trace_) trace_(cum_low, cum_high, total);
    const std::uint64_t range = high_ - low_ + 1;
    high_ = low_ + range * cum_high / total - 1;
    low_ = low_ + range * cum_low / total;
    while (true) {
      if (high_ < arith::kHalf) {
        emit_with_pending(0);
      } else if (low_ >= arith::kHalf) {
        emit_with_pending(1);
        low_ -= arith::kHalf;
        high_ -= arith::kHalf;
      } else if (low_ >= arith::kQuarter && high_ < arith::kThreeQuarters) {
        ++pending_;
        low_ -= arith::kQuarter;
        high_ -= arith::kQuarter;
      } else {
        break;
      }
      low_ = low_ << 1;
      high_ = (high_ << 1) | 1;
    }
  }

  std::vector<std::uint8_t> finish() {
    ++pending_;
    emit_with_pending(low_ < arith::kQuarter ? 0 : 1);
    if (bit_count_ % 8 != 0) bytes_.back() <<= (8 - bit_count_ % 8);
    return std::move(bytes_);
  }

 private:
  void put_bit(int bit) {
    if (bit_count_ % 8 == 0) bytes_.push_back(0);
    bytes_.back() = static_cast<std::uint8_t>((bytes_.back() << 1) | bit);
    ++bit_count_;
  }
  void emit_with_pending(int bit) {
    put_bit(bit);
    for (; pending_ > 0; --pending_) put_bit(1 - bit);
  }

  std::uint64_t low_ = 0;
  std::uint64_t high_ = arith::kTop;
  std::uint64_t pending_ = 0;
  std::uint64_t bit_count_ = 0;
  std::vector<std::uint8_t> bytes_;
  Trace trace_;
};

class ArithmeticDecoder {
 public:
  explicit ArithmeticDecoder(std::span<const std::uint8_t> bytes) : bytes_(bytes) {
    for (int i = 0; i < 32; ++i) value_ = (value_ << 1) | next_bit();
  }

  // Cumulative count that the next symbol's interval contains.
  std::uint32_t target(std::uint32_t total) const {
    const std::uint64_t range = high_ - low_ + 1;
    return static_cast<std::uint32_t>(((value_ - low_ + 1) * total - 1) / range);
  }

  void consume(std::uint32_t cum_low, std::uint32_t cum_high, std::uint32_t total) {
    const std::uint64_t range = high_ - low_ + 1;
    high_ = low_ + range * cum_high / total - 1;
    low_ = low_ + range * cum_low / total;
    while (true) {
      if (high_ < arith::kHalf) {
        // nothing to subtract
      } else if (low_ >= arith::kHalf) {
        low_ -= arith::kHalf;
        high_ -= arith::kHalf;
        value_ -= arith::kHalf;
      } else if (low_ >= arith::kQuarter && high_ < arith::kThreeQuarters) {
        low_ -= arith::kQuarter;
        high_ -= arith::kQuarter;
        value_ -= arith::kQuarter;
      } else {
        break;
      }
      low_ = low_ << 1;
      high_ = (high_ << 1) | 1;
      value_ = (value_ << 1) | next_bit();
      ++shifts_;
    }
  }

  // Call after the final symbol: the stream must be exactly as long as the
  // encoder would have made it.
  void expect_end() const {
    const std::uint64_t expected = (shifts_ + 2 + 7) / 8;
    if (expected > bytes_.size()) {
      throw Error(ErrorCode::kTruncatedStream, "coded stream is truncated");
    }
    if (expected < bytes_.size()) {
      throw Error(ErrorCode::kLengthMismatch, "trailing bytes after coded stream");
    }
  }

 private:
  int next_bit() {
    const std::uint64_t byte = bits_read_ / 8;
    ++bits_read_;
    // A valid stream never needs more than 30 bits of lookahead past its end.
    if (bits_read_ > 8 * static_cast<std::uint64_t>(bytes_.size()) + 30) {
      throw Error(ErrorCode::kTruncatedStream, "coded stream ended before its terminator");
    }
    if (byte >= bytes_.size()) return 0;
    return (bytes_[byte] >> (7 - (bits_read_ - 1) % 8)) & 1;
  }

  std::span<const std::uint8_t> bytes_;
  std::uint64_t low_ = 0;
  std::uint64_t high_ = arith::kTop;
  std::uint64_t value_ = 0;
  std::uint64_t bits_read_ = 0;
  std::uint64_t shifts_ = 0;
};

}  // namespace vcmf

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

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcmf/arith.hpp"
#include "vcmf/error.hpp"

namespace vcmf {

struct PpmConfig {
  int max_order = 3;
  // Decoder refuses to produce more than this many bytes.
  std::size_t max_output = std::size_t{64} << 20;

  void validate() const {
    if (max_order < 0 || max_order > 8) {
      throw Error(ErrorCode::kInvalidArgument, "PPM order must be in [0, 8]");
    }
  }
};

// Adaptive context model for Prediction by Partial Matching with escape
// method C (escape count = number of distinct symbols in the context),
// exclusion of symbols already rejected at longer contexts, and update
// exclusion (only the coding order and longer ones learn the symbol).
// Symbols 0..255 are bytes; 256 terminates the stream.
class PpmModel {
 public:
  static constexpr int kEndOfStream = 256;
  static constexpr int kAlphabet = 257;
  static constexpr std::uint32_t kMaxContextTotal = 1u << 14;

  explicit PpmModel(int max_order) : max_order_(max_order), tables_(max_order + 1) {}

  template <typename Coder>
  void encode_symbol(int symbol, Coder& coder) {
    excluded_.fill(false);
    int coded_order = -1;
    for (int order = usable_order(); order >= 0; --order) {
      const Context* ctx = find(order);
      if (ctx == nullptr) continue;
      std::uint32_t visible = 0;
      std::uint32_t cum = 0;
      std::uint32_t width = 0;
      for (const auto& [sym, count] : ctx->entries) {
        if (excluded_[sym]) continue;
        if (sym == symbol) {
          cum = visible;
          width = count;
        }
        visible += count;
      }
      if (visible == 0) continue;
      const std::uint32_t total = visible + escape_count(*ctx);
      if (width != 0) {
        coder.encode(cum, cum + width, total);
        coded_order = order;
        break;
      }
      coder.encode(visible, total, total);
      exclude(*ctx);
    }
    if (coded_order < 0) {
      std::uint32_t rank = 0;
      std::uint32_t total = 0;
      for (int s = 0; s < kAlphabet; ++s) {
        if (excluded_[s]) continue;
        if (s < symbol) ++rank;
        ++total;
      }
      coder.encode(rank, rank + 1, total);
    }
    update(symbol, coded_order);
  }

  int decode_symbol(ArithmeticDecoder& coder) {
    excluded_.fill(false);
    for (int order = usable_order(); order >= 0; --order) {
      const Context* ctx = find(order);
      if (ctx == nullptr) continue;
      std::uint32_t visible = 0;
      for (const auto& [sym, count] : ctx->entries) {
        if (!excluded_[sym]) visible += count;
      }
      if (visible == 0) continue;
      const std::uint32_t total = visible + escape_count(*ctx);
      const std::uint32_t target = coder.target(total);
      if (target >= visible) {
        coder.consume(visible, total, total);
        exclude(*ctx);
        continue;
      }
      std::uint32_t cum = 0;
      for (const auto& [sym, count] : ctx->entries) {
        if (excluded_[sym]) continue;
        if (target < cum + count) {
          coder.consume(cum, cum + count, total);
          update(sym, order);
          return sym;
        }
        cum += count;
      }
    }
    std::uint32_t total = 0;
    for (int s = 0; s < kAlphabet; ++s) total += excluded_[s] ? 0 : 1;
    const std::uint32_t target = coder.target(total);
    std::uint32_t rank = 0;
    for (int s = 0; s < kAlphabet; ++s) {
      if (excluded_[s]) continue;
      if (rank == target) {
        coder.consume(rank, rank + 1, total);
        update(s, -1);
        return s;
      }
      ++rank;
    }
    throw Error(ErrorCode::kTruncatedStream, "decoder target outside the alphabet");
  }

  // Order-independent digest of every context table plus the history window.
  std::uint64_t fingerprint() const {
    std::uint64_t acc = 0;
    for (std::size_t order = 0; order < tables_.size(); ++order) {
      for (const auto& [key, ctx] : tables_[order]) {
        std::uint64_t h = mix(key ^ (order << 59));
        for (const auto& [sym, count] : ctx.entries) {
          h = mix(h ^ (static_cast<std::uint64_t>(sym) << 20) ^ count);
        }
        acc += h;
      }
    }
    return mix(acc ^ history_);
  }

 private:
  struct Context {
    std::vector<std::pair<std::uint16_t, std::uint16_t>> entries;  // (symbol, count)
    std::uint32_t count_sum = 0;
  };

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
  }

  static std::uint32_t escape_count(const Context& ctx) {
    return static_cast<std::uint32_t>(ctx.entries.size());
  }

  int usable_order() const { return std::min(max_order_, history_len_); }

  std::uint64_t key(int order) const {
    if (order == 0) return 0;
    if (order >= 8) return history_;
    return history_ & ((std::uint64_t{1} << (8 * order)) - 1);
  }

  const Context* find(int order) const {
    const auto& table = tables_[order];
    auto it = table.find(key(order));
    return it == table.end() ? nullptr : &it->second;
  }

  void exclude(const Context& ctx) {
    for (const auto& entry : ctx.entries) excluded_[entry.first] = true;
  }

  void update(int symbol, int coded_order) {
    if (symbol == kEndOfStream) return;
    const int top = usable_order();
    for (int order = std::max(coded_order, 0); order <= top; ++order) {
      Context& ctx = tables_[order][key(order)];
      auto it = std::find_if(ctx.entries.begin(), ctx.entries.end(),
                             [&](const auto& e) { return e.first == symbol; });
      if (it == ctx.entries.end()) {
        ctx.entries.emplace_back(static_cast<std::uint16_t>(symbol), 1);
      } else {
        ++it->second;
      }
      ++ctx.count_sum;
      if (ctx.count_sum + escape_count(ctx) > kMaxContextTotal) {
        ctx.count_sum = 0;
        for (auto& e : ctx.entries) {
          e.second = static_cast<std::uint16_t>((e.second + 1) / 2);
          ctx.count_sum += e.second;
        }
      }
    }
    history_ = (history_ << 8) | static_cast<std::uint64_t>(symbol);
    history_len_ = std::min(history_len_ + 1, 8);
  }

  int max_order_;
  std::vector<std::unordered_map<std::uint64_t, Context>> tables_;
  std::uint64_t history_ = 0;
  int history_len_ = 0;
  std::array<bool, kAlphabet> excluded_{};
};

// Called with the model after each coded symbol (testing hook).
using PpmObserver = std::function<void(const PpmModel&)>;

inline std::vector<std::uint8_t> ppm_compress(std::span<const std::uint8_t> data,
                                              const PpmConfig& cfg = {},
                                              const PpmObserver& observer = {},
                                              ArithmeticEncoder::Trace trace = {}) {
  cfg.validate();
  PpmModel model(cfg.max_order);
  ArithmeticEncoder coder(std::move(trace));
  for (std::uint8_t byte : data) {
    model.encode_symbol(byte, coder);
    if (observer) observer(model);
  }
  model.encode_symbol(PpmModel::kEndOfStream, coder);
  return coder.finish();
}

inline std::vector<std::uint8_t> ppm_decompress(std::span<const std::uint8_t> data,
                                                const PpmConfig& cfg = {},
                                                const PpmObserver& observer = {}) {
  cfg.validate();
  PpmModel model(cfg.max_order);
  ArithmeticDecoder coder(data);
  std::vector<std::uint8_t> out;
  while (true) {
    const int symbol = model.decode_symbol(coder);
    if (symbol == PpmModel::kEndOfStream) break;
    if (out.size() >= cfg.max_output) {
      throw Error(ErrorCode::kLengthMismatch,
                  "decoded data exceeds " + std::to_string(cfg.max_output) + " bytes");
    }
    out.push_back(static_cast<std::uint8_t>(symbol));
    if (observer) observer(model);
  }
  coder.expect_end();
  return out;
}

}  // namespace vcmf

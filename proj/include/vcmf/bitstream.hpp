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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcmf/edge.hpp"
#include "vcmf/error.hpp"
#include "vcmf/image.hpp"
#include "vcmf/ppm.hpp"
#include "vcmf/recon.hpp"
#include "vcmf/refpix.hpp"
#include "vcmf/vectorize.hpp"

namespace vcmf {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'V', 'C', 'M', 'F'};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::uint8_t kFlagEnhancement = 0x01;
inline constexpr std::size_t kFixedHeaderSize = 4 + 1 + 1 + 2 + 2 + 4;

// Container layout (all integers big-endian):
//   "VCMF" | version u8 | flags u8 | width u16 | height u16 |
//   base_len u32 | base bytes | [enh_len u32 | enh bytes]   (flags bit 0)
struct CodedImage {
  std::uint8_t version = kFormatVersion;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::vector<std::uint8_t> base;
  std::optional<std::vector<std::uint8_t>> enhancement;

  bool has_enhancement() const { return enhancement.has_value(); }
  std::uint8_t flags() const { return has_enhancement() ? kFlagEnhancement : 0; }

  std::size_t packed_size() const {
    return kFixedHeaderSize + base.size() + (enhancement ? 4 + enhancement->size() : 0);
  }
  std::size_t base_layer_size() const { return kFixedHeaderSize + base.size(); }

  bool operator==(const CodedImage&) const = default;
};

namespace detail {

inline void put_be(std::uint64_t v, int bytes, std::vector<std::uint8_t>* out) {
  for (int i = bytes - 1; i >= 0; --i) out->push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t remaining() const { return data_.size() - pos_; }

  std::uint32_t be(int bytes, const char* what) {
    need(static_cast<std::size_t>(bytes), what);
    std::uint32_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | data_[pos_++];
    return v;
  }

  std::vector<std::uint8_t> take(std::size_t n, const char* what) {
    need(n, what);
    std::vector<std::uint8_t> out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                  data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw Error(ErrorCode::kTruncatedContainer,
                  std::string("stream ends inside ") + what);
    }
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::uint8_t> pack(const CodedImage& c) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(c.version);
  out.push_back(c.flags());
  detail::put_be(c.width, 2, &out);
  detail::put_be(c.height, 2, &out);
  detail::put_be(c.base.size(), 4, &out);
  out.insert(out.end(), c.base.begin(), c.base.end());
  if (c.enhancement) {
    detail::put_be(c.enhancement->size(), 4, &out);
    out.insert(out.end(), c.enhancement->begin(), c.enhancement->end());
  }
  return out;
}

inline CodedImage unpack(std::span<const std::uint8_t> bytes) {
  const std::size_t magic_bytes = std::min(bytes.size(), kMagic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(magic_bytes),
                  kMagic.begin())) {
    throw Error(ErrorCode::kBadMagic, "stream does not start with VCMF");
  }
  detail::ByteReader r(bytes);
  r.take(4, "magic");
  CodedImage c;
  c.version = static_cast<std::uint8_t>(r.be(1, "version"));
  if (c.version != kFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "format version " + std::to_string(c.version));
  }
  const auto flags = static_cast<std::uint8_t>(r.be(1, "flags"));
  if ((flags & ~kFlagEnhancement) != 0) {
    throw Error(ErrorCode::kInvalidHeader, "reserved flag bits set");
  }
  c.width = static_cast<std::uint16_t>(r.be(2, "width"));
  c.height = static_cast<std::uint16_t>(r.be(2, "height"));
  if (c.width == 0 || c.height == 0) {
    throw Error(ErrorCode::kInvalidHeader, "zero image dimension");
  }
  const std::uint32_t base_len = r.be(4, "base length");
  c.base = r.take(base_len, "base layer");
  if (flags & kFlagEnhancement) {
    const std::uint32_t enh_len = r.be(4, "enhancement length");
    c.enhancement = r.take(enh_len, "enhancement layer");
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(r.remaining()) + " trailing bytes after last layer");
  }
  return c;
}

// Encoder-side knobs. Sampling and PPM settings are fixed by format version 1
// and must match on the decoder; the defaults are the conforming values.
struct EncoderConfig {
  EdgeParams edge;
  FitParams fit;
  SamplingParams sampling;
  PpmConfig base_ppm{3};
  PpmConfig enhancement_ppm{1};
};

struct DecoderConfig {
  SamplingParams sampling;
  PpmConfig base_ppm{3};
  PpmConfig enhancement_ppm{1};
  ReconParams recon;
};

// Everything the encoder derived, for inspection and tests.
struct EncodeResult {
  CodedImage coded;
  BinaryMap edge_map;      // post-processed (thinned, pruned) detector output
  VectorDrawing drawing;   // as decoded from the base layer
  BinaryMap rendered;      // rasterize(drawing)
  std::vector<Point> positions;
};

inline EncodeResult encode_detailed(const RasterImage& img, bool with_color,
                                    const EncoderConfig& cfg = {}) {
  if (img.channels() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "encoder expects a 3-channel image");
  }
  if (img.width() > 0xFFFF || img.height() > 0xFFFF) {
    throw Error(ErrorCode::kInvalidArgument, "image exceeds 65535 pixels per side");
  }
  EncodeResult r;
  r.coded.width = static_cast<std::uint16_t>(img.width());
  r.coded.height = static_cast<std::uint16_t>(img.height());
  r.edge_map = extract_edge_map(img, cfg.edge);
  const VectorDrawing fitted =
      fit_paths(trace_chains(r.edge_map), img.width(), img.height(), cfg.fit);
  r.coded.base = ppm_compress(serialize_params(fitted), cfg.base_ppm);

  // Positions come from the geometry the decoder will see, not from `fitted`.
  r.drawing = deserialize_params(ppm_decompress(r.coded.base, cfg.base_ppm),
                                 img.width(), img.height());
  r.rendered = rasterize(r.drawing);
  if (with_color) {
    r.positions = sample_positions(r.drawing, r.rendered, cfg.sampling);
    std::vector<std::uint8_t> triples;
    triples.reserve(3 * r.positions.size());
    for (const Rgb& rgb : gather_colors(img, r.positions)) {
      triples.insert(triples.end(), rgb.begin(), rgb.end());
    }
    r.coded.enhancement = ppm_compress(triples, cfg.enhancement_ppm);
  }
  return r;
}

inline CodedImage encode(const RasterImage& img, bool with_color,
                         const EncoderConfig& cfg = {}) {
  return encode_detailed(img, with_color, cfg).coded;
}

struct DecodedLayers {
  VectorDrawing drawing;
  std::vector<Point> positions;  // empty without an enhancement layer
  EmcBundle emc;
};

inline DecodedLayers decode_layers(const CodedImage& c, const DecoderConfig& cfg = {}) {
  if (c.width == 0 || c.height == 0) {
    throw Error(ErrorCode::kInvalidHeader, "zero image dimension");
  }
  DecodedLayers out;
  out.drawing = deserialize_params(ppm_decompress(c.base, cfg.base_ppm), c.width, c.height);
  out.emc.edges = rasterize(out.drawing);
  if (!c.enhancement) {
    out.emc.mask = BinaryMap(c.width, c.height);
    out.emc.color = RasterImage(c.width, c.height, 3);
    return out;
  }
  out.positions = sample_positions(out.drawing, out.emc.edges, cfg.sampling);
  PpmConfig enh_cfg = cfg.enhancement_ppm;
  enh_cfg.max_output = 3 * out.positions.size();
  std::vector<std::uint8_t> triples;
  try {
    triples = ppm_decompress(*c.enhancement, enh_cfg);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptEnhancement, e.what());
  }
  if (triples.size() != 3 * out.positions.size()) {
    throw Error(ErrorCode::kCorruptEnhancement,
                "enhancement carries " + std::to_string(triples.size()) +
                    " bytes for " + std::to_string(out.positions.size()) + " positions");
  }
  std::vector<Rgb> colors(out.positions.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    colors[i] = {triples[3 * i], triples[3 * i + 1], triples[3 * i + 2]};
  }
  auto mc = build_mask_color(out.positions, colors, c.width, c.height);
  out.emc.mask = std::move(mc.mask);
  out.emc.color = std::move(mc.color);
  return out;
}

enum class DecodeMode { kClassical, kExport };

struct DecodeResult {
  DecodedLayers layers;
  std::optional<RasterImage> image;  // set in classical mode
};

inline DecodeResult decode(const CodedImage& c, DecodeMode mode,
                           const DecoderConfig& cfg = {}) {
  DecodeResult r{decode_layers(c, cfg), std::nullopt};
  if (mode == DecodeMode::kClassical) {
    r.image = diffuse_reconstruct(r.layers.emc.edges, r.layers.emc.mask,
                                  r.layers.emc.color, cfg.recon);
  }
  return r;
}

}  // namespace vcmf

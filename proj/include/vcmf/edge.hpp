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
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "vcmf/error.hpp"
#include "vcmf/image.hpp"

namespace vcmf {

struct EdgeParams {
  double sigma = 1.4;
  // Thresholds on the unnormalized Sobel magnitude of the smoothed image,
  // in 8-bit intensity units (a smoothed step of height h peaks near 2.3h).
  double low_threshold = 40.0;
  double high_threshold = 100.0;
  int min_component_pixels = 10;

  void validate() const {
    if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be > 0");
    if (low_threshold < 0.0 || low_threshold > high_threshold) {
      throw Error(ErrorCode::kInvalidArgument, "need 0 <= low <= high threshold");
    }
    if (min_component_pixels < 1) {
      throw Error(ErrorCode::kInvalidArgument, "min_component_pixels must be >= 1");
    }
  }
};

// 8-neighborhood in clockwise order starting at north.
inline constexpr std::array<std::pair<int, int>, 8> kNeighbors8 = {{
    {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1},
}};

namespace detail {

// Symmetric integer Gaussian taps; integer arithmetic keeps mirrored inputs
// producing bit-identical gradient magnitudes.
inline std::vector<std::int64_t> integer_gaussian(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<std::int64_t> taps(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] =
        std::llround(1024.0 * std::exp(-(i * i) / (2.0 * sigma * sigma)));
  }
  return taps;
}

// Smoothed luma scaled by (sum of taps)^2, replicate borders.
inline std::vector<std::int64_t> smooth(const RasterImage& gray, double sigma,
                                        std::int64_t* scale) {
  const int w = gray.width();
  const int h = gray.height();
  const auto taps = integer_gaussian(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  std::int64_t tap_sum = 0;
  for (auto t : taps) tap_sum += t;
  *scale = tap_sum * tap_sum;

  auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  std::vector<std::int64_t> horiz(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t acc = 0;
      for (int k = -radius; k <= radius; ++k) {
        acc += taps[k + radius] * gray.at(clampi(x + k, 0, w - 1), y);
      }
      horiz[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  std::vector<std::int64_t> out(horiz.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t acc = 0;
      for (int k = -radius; k <= radius; ++k) {
        acc += taps[k + radius] *
               horiz[static_cast<std::size_t>(clampi(y + k, 0, h - 1)) * w + x];
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace detail

// Sobel gradient of the smoothed image, exposed for tests and diagnostics.
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx;         // intensity units
  std::vector<double> gy;
  std::vector<double> magnitude;  // zero on the 1-pixel border

  double at(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return 0.0;
    return magnitude[static_cast<std::size_t>(y) * width + x];
  }
};

inline GradientField compute_gradient(const RasterImage& img, double sigma) {
  const RasterImage gray = to_grayscale(img);
  const int w = gray.width();
  const int h = gray.height();
  GradientField g;
  g.width = w;
  g.height = h;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  g.gx.assign(n, 0.0);
  g.gy.assign(n, 0.0);
  g.magnitude.assign(n, 0.0);
  if (w < 3 || h < 3) return g;

  std::int64_t scale = 1;
  const auto s = detail::smooth(gray, sigma, &scale);
  auto px = [&](int x, int y) { return s[static_cast<std::size_t>(y) * w + x]; };
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const std::int64_t gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const std::int64_t gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double fx = static_cast<double>(gx);
      const double fy = static_cast<double>(gy);
      g.gx[i] = fx / static_cast<double>(scale);
      g.gy[i] = fy / static_cast<double>(scale);
      g.magnitude[i] = std::sqrt(fx * fx + fy * fy) / static_cast<double>(scale);
    }
  }
  return g;
}

// Canny-style detection: smoothing, Sobel, non-maximum suppression and
// hysteresis. Images narrower or shorter than 3 pixels give an empty map.
inline BinaryMap detect_edges(const RasterImage& img, const EdgeParams& params) {
  params.validate();
  const int w = img.width();
  const int h = img.height();
  BinaryMap out(w, h);
  if (w < 3 || h < 3) return out;

  const GradientField g = compute_gradient(img, params.sigma);
  constexpr double kTan22_5 = 0.41421356237309503;

  // Candidates survive NMS; ties along the gradient keep the lower-index
  // pixel (strict against the negative side, non-strict against the positive).
  std::vector<std::uint8_t> klass(static_cast<std::size_t>(w) * h, 0);  // 1 weak, 2 strong
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double m = g.magnitude[i];
      if (m <= 0.0 || m < params.low_threshold) continue;
      const double ax = std::abs(g.gx[i]);
      const double ay = std::abs(g.gy[i]);
      int dx = 0;
      int dy = 0;
      if (ay <= ax * kTan22_5) {
        dx = 1;
      } else if (ax <= ay * kTan22_5) {
        dy = 1;
      } else if ((g.gx[i] > 0) == (g.gy[i] > 0)) {
        dx = 1;
        dy = 1;
      } else {
        dx = -1;
        dy = 1;
      }
      const double neg = g.at(x - dx, y - dy);
      const double pos = g.at(x + dx, y + dy);
      if (!(m > neg && m >= pos)) continue;
      klass[i] = m >= params.high_threshold ? 2 : 1;
    }
  }

  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (klass[static_cast<std::size_t>(y) * w + x] == 2 && !out.get(x, y)) {
        out.set(x, y);
        stack.emplace_back(x, y);
        while (!stack.empty()) {
          auto [cx, cy] = stack.back();
          stack.pop_back();
          for (auto [ox, oy] : kNeighbors8) {
            const int nx = cx + ox;
            const int ny = cy + oy;
            if (!out.contains(nx, ny) || out.get(nx, ny)) continue;
            if (klass[static_cast<std::size_t>(ny) * w + nx] == 0) continue;
            out.set(nx, ny);
            stack.emplace_back(nx, ny);
          }
        }
      }
    }
  }
  return out;
}

// Removes 8-connected components with fewer than `min_pixels` set pixels.
inline BinaryMap prune_components(const BinaryMap& map, int min_pixels) {
  const int w = map.width();
  const int h = map.height();
  BinaryMap out = map;
  if (min_pixels <= 1) return out;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::pair<int, int>> component;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!map.get(x, y) || seen[static_cast<std::size_t>(y) * w + x]) continue;
      component.clear();
      stack.assign(1, {x, y});
      seen[static_cast<std::size_t>(y) * w + x] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        component.emplace_back(cx, cy);
        for (auto [ox, oy] : kNeighbors8) {
          const int nx = cx + ox;
          const int ny = cy + oy;
          if (!map.test(nx, ny) || seen[static_cast<std::size_t>(ny) * w + nx]) continue;
          seen[static_cast<std::size_t>(ny) * w + nx] = 1;
          stack.emplace_back(nx, ny);
        }
      }
      if (static_cast<int>(component.size()) < min_pixels) {
        for (auto [cx, cy] : component) out.set(cx, cy, false);
      }
    }
  }
  return out;
}

namespace detail {

// Plain Zhang-Suen deletes 2x2 blocks outright. If a subiteration would
// remove every pixel of a component, spare its first pixel in scan order.
inline void keep_last_pixel_of_erased_components(
    const BinaryMap& map, std::vector<std::pair<int, int>>* doomed) {
  if (doomed->empty()) return;
  const int w = map.width();
  std::vector<std::uint8_t> marked(static_cast<std::size_t>(w) * map.height(), 0);
  for (auto [x, y] : *doomed) marked[static_cast<std::size_t>(y) * w + x] = 1;
  auto is_marked = [&](int x, int y) {
    return marked[static_cast<std::size_t>(y) * w + x] != 0;
  };
  std::vector<std::uint8_t> seen(marked.size(), 0);
  std::vector<std::pair<int, int>> spared;
  std::vector<std::pair<int, int>> stack;
  for (auto [x, y] : *doomed) {
    if (seen[static_cast<std::size_t>(y) * w + x]) continue;
    bool all_marked = true;
    std::pair<int, int> first{x, y};
    stack.assign(1, {x, y});
    seen[static_cast<std::size_t>(y) * w + x] = 1;
    while (!stack.empty()) {
      auto [cx, cy] = stack.back();
      stack.pop_back();
      if (!is_marked(cx, cy)) all_marked = false;
      if (std::make_pair(cy, cx) < std::make_pair(first.second, first.first)) first = {cx, cy};
      for (auto [ox, oy] : kNeighbors8) {
        const int nx = cx + ox;
        const int ny = cy + oy;
        if (!map.test(nx, ny) || seen[static_cast<std::size_t>(ny) * w + nx]) continue;
        seen[static_cast<std::size_t>(ny) * w + nx] = 1;
        stack.emplace_back(nx, ny);
      }
    }
    if (all_marked) spared.push_back(first);
  }
  if (spared.empty()) return;
  std::erase_if(*doomed, [&](const std::pair<int, int>& p) {
    return std::find(spared.begin(), spared.end(), p) != spared.end();
  });
}

}  // namespace detail

// Zhang-Suen thinning. Pixels outside the map count as background. A
// component is never erased completely (see above).
inline BinaryMap thin(const BinaryMap& map) {
  BinaryMap out = map;
  const int w = map.width();
  const int h = map.height();
  std::vector<std::pair<int, int>> doomed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      doomed.clear();
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (!out.get(x, y)) continue;
          // P2..P9 clockwise from north.
          std::array<int, 8> p{};
          for (int k = 0; k < 8; ++k) {
            p[k] = out.test(x + kNeighbors8[k].first, y + kNeighbors8[k].second) ? 1 : 0;
          }
          int b = 0;
          int a = 0;
          for (int k = 0; k < 8; ++k) {
            b += p[k];
            if (p[k] == 0 && p[(k + 1) % 8] == 1) ++a;
          }
          if (b < 2 || b > 6 || a != 1) continue;
          // p[0]=P2 (N), p[2]=P4 (E), p[4]=P6 (S), p[6]=P8 (W)
          if (pass == 0) {
            if (p[0] * p[2] * p[4] != 0) continue;
            if (p[2] * p[4] * p[6] != 0) continue;
          } else {
            if (p[0] * p[2] * p[6] != 0) continue;
            if (p[0] * p[4] * p[6] != 0) continue;
          }
          doomed.emplace_back(x, y);
        }
      }
      detail::keep_last_pixel_of_erased_components(out, &doomed);
      for (auto [x, y] : doomed) out.set(x, y, false);
      if (!doomed.empty()) changed = true;
    }
  }
  return out;
}

// Full base-layer edge pipeline: detect, thin, then drop short components.
inline BinaryMap extract_edge_map(const RasterImage& img, const EdgeParams& params) {
  return prune_components(thin(detect_edges(img, params)),
                          params.min_component_pixels);
}

}  // namespace vcmf

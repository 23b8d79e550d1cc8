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
#include <numbers>
#include <random>

#include "vcmf/image.hpp"

// Procedural test images. The sample corpus is generated rather than shipped
// so every run sees byte-identical inputs.
namespace vcmf::synth {

namespace detail {

// Portable uniform draws from mt19937 (the std distributions are not
// specified bit-exactly across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_()) / 4294967296.0);
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint32_t>(hi - lo + 1));
  }

 private:
  std::mt19937 engine_;
};

using Color = std::array<double, 3>;

inline void paint(RasterImage* img, int x, int y, const Color& c) {
  for (int k = 0; k < 3; ++k) {
    img->at(x, y, k) = static_cast<std::uint8_t>(std::clamp(std::lround(c[k]), 0L, 255L));
  }
}

inline bool in_ellipse(double x, double y, double cx, double cy, double rx, double ry,
                       double angle = 0.0) {
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  const double dx = x - cx;
  const double dy = y - cy;
  const double u = (dx * ca + dy * sa) / rx;
  const double v = (-dx * sa + dy * ca) / ry;
  return u * u + v * v <= 1.0;
}

inline Color scale(const Color& c, double s) { return {c[0] * s, c[1] * s, c[2] * s}; }

}  // namespace detail

// 3-channel portrait-like scene: shaded background, shoulders, hair, face
// oval with eyes, brows, nose shadow and lips. Layout and palette vary with
// the seed; mild sample noise is added.
inline RasterImage face_like(std::uint32_t seed, int size = 256) {
  detail::Rng rng(seed);
  RasterImage img(size, size, 3);
  const double s = size / 256.0;

  const detail::Color bg_top{rng.uniform(60, 200), rng.uniform(60, 200), rng.uniform(60, 200)};
  const detail::Color bg_bottom{rng.uniform(40, 180), rng.uniform(40, 180), rng.uniform(40, 180)};
  const double tone = rng.uniform(0.55, 1.0);
  const detail::Color skin{235 * tone, 190 * tone, 160 * tone};
  const detail::Color hair{rng.uniform(20, 110), rng.uniform(15, 80), rng.uniform(10, 60)};
  const detail::Color shirt{rng.uniform(20, 230), rng.uniform(20, 230), rng.uniform(20, 230)};
  const detail::Color iris{rng.uniform(30, 120), rng.uniform(40, 140), rng.uniform(40, 160)};
  const detail::Color lips{rng.uniform(150, 210), rng.uniform(60, 100), rng.uniform(70, 110)};

  const double cx = size / 2.0 + rng.uniform(-12, 12) * s;
  const double cy = size * 0.46 + rng.uniform(-8, 8) * s;
  const double rx = rng.uniform(58, 72) * s;
  const double ry = rng.uniform(78, 92) * s;
  const double tilt = rng.uniform(-0.12, 0.12);
  const double eye_dx = rng.uniform(24, 30) * s;
  const double eye_y = cy - rng.uniform(8, 18) * s;
  const double mouth_y = cy + rng.uniform(40, 52) * s;
  const double mouth_w = rng.uniform(18, 28) * s;
  const int strands = rng.integer(6, 14);
  std::array<double, 16> strand_phase{};
  for (auto& p : strand_phase) p = rng.uniform(0, 2 * std::numbers::pi);
  const double strand_freq = rng.uniform(0.18, 0.3) / s;
  const double strand_wave = rng.uniform(4, 9) * s;
  // Background clutter: a few framed panels (windows, pictures, shelves).
  struct Panel {
    double x0, y0, x1, y1;
    detail::Color fill;
  };
  std::array<Panel, 4> panels{};
  const int panel_count = rng.integer(2, 4);
  for (int k = 0; k < panel_count; ++k) {
    const double px = rng.uniform(0, 200) * s;
    const double py = rng.uniform(0, 150) * s;
    panels[k] = {px, py, px + rng.uniform(30, 80) * s, py + rng.uniform(25, 90) * s,
                 {rng.uniform(30, 230), rng.uniform(30, 230), rng.uniform(30, 230)}};
  }

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double fx = x + 0.5;
      const double fy = y + 0.5;
      const double t = fy / size;
      detail::Color c{bg_top[0] * (1 - t) + bg_bottom[0] * t,
                      bg_top[1] * (1 - t) + bg_bottom[1] * t,
                      bg_top[2] * (1 - t) + bg_bottom[2] * t};

      for (int k = 0; k < panel_count; ++k) {
        const Panel& p = panels[k];
        if (fx >= p.x0 && fx < p.x1 && fy >= p.y0 && fy < p.y1) {
          c = p.fill;
          const bool frame = fx < p.x0 + 3 * s || fx >= p.x1 - 3 * s ||
                             fy < p.y0 + 3 * s || fy >= p.y1 - 3 * s;
          if (frame) c = detail::scale(p.fill, 0.55);
        }
      }
      // Shoulders with a V collar and button placket.
      if (detail::in_ellipse(fx, fy, cx, size * 1.08, 120 * s, 70 * s)) {
        c = shirt;
        const double dx = std::abs(fx - cx);
        if (fy > size * 0.86 && dx < (fy - size * 0.86) * 0.9 + 2 * s &&
            dx > (fy - size * 0.86) * 0.9 - 4 * s) {
          c = detail::scale(shirt, 0.6);
        }
        if (dx < 1.5 * s && fy > size * 0.93) c = detail::scale(shirt, 0.5);
      }
      // Neck.
      if (std::abs(fx - cx) < 26 * s && fy > cy + ry * 0.6 && fy < size * 0.95) {
        c = detail::scale(skin, 0.85);
      }
      // Hair mass behind the face, with darker strands.
      const bool hair_mass =
          detail::in_ellipse(fx, fy, cx, cy - 18 * s, rx * 1.22, ry * 0.98, tilt);
      const double strand =
          std::sin(fx * strand_freq + strand_wave * std::sin(fy * 0.05 / s) * 0.2);
      const detail::Color hair_px = strand > 0.6 ? detail::scale(hair, 0.55) : hair;
      if (hair_mass) c = hair_px;
      // Face with horizontal shading.
      if (detail::in_ellipse(fx, fy, cx, cy, rx, ry, tilt)) {
        const double shade = 1.0 - 0.15 * std::abs(fx - cx) / rx;
        c = detail::scale(skin, shade);
        // Fringe: wavy hairline across the forehead.
        double hairline = cy - ry * 0.55;
        for (int k = 0; k < strands; ++k) {
          hairline += 3.0 * s * std::sin(fx / (9.0 * s) + strand_phase[k]) / strands;
        }
        if (fy < hairline) c = hair_px;
        // Chin shadow and cheek creases.
        if (!detail::in_ellipse(fx, fy, cx, cy - 6 * s, rx * 0.96, ry * 0.93, tilt)) {
          c = detail::scale(skin, 0.8);
        }
        for (int side : {-1, 1}) {
          if (detail::in_ellipse(fx, fy, cx + side * 24 * s, cy + 36 * s, 2 * s, 13 * s,
                                 -side * 0.5)) {
            c = detail::scale(skin, 0.7);
          }
        }
      }
      // Ears.
      for (int side : {-1, 1}) {
        const double ex = cx + side * rx * 0.98;
        if (detail::in_ellipse(fx, fy, ex, cy, 10 * s, 18 * s) &&
            !detail::in_ellipse(fx, fy, cx, cy, rx, ry, tilt)) {
          c = detail::scale(skin, 0.9);
        }
      }
      // Eyes, brows.
      for (int side : {-1, 1}) {
        const double ex = cx + side * eye_dx;
        if (detail::in_ellipse(fx, fy, ex, eye_y - 6 * s, 15 * s, 4 * s)) {
          c = detail::scale(skin, 0.72);  // eyelid crease
        }
        if (detail::in_ellipse(fx, fy, ex, eye_y, 13 * s, 6.5 * s)) {
          c = {240, 240, 235};
          if (detail::in_ellipse(fx, fy, ex, eye_y, 5.5 * s, 5.5 * s)) c = iris;
          if (detail::in_ellipse(fx, fy, ex, eye_y, 2.2 * s, 2.2 * s)) c = {15, 15, 15};
        }
        if (detail::in_ellipse(fx, fy, ex, eye_y - 14 * s, 16 * s, 3.2 * s, side * 0.15)) {
          c = detail::scale(hair, 0.8);
        }
      }
      // Nose shadow.
      if (detail::in_ellipse(fx, fy, cx + 3 * s, cy + 18 * s, 4 * s, 14 * s, 0.05)) {
        c = detail::scale(skin, 0.72);
      }
      if (detail::in_ellipse(fx, fy, cx, cy + 30 * s, 11 * s, 4 * s)) c = detail::scale(skin, 0.62);
      for (int side : {-1, 1}) {
        if (detail::in_ellipse(fx, fy, cx + side * 5 * s, cy + 31 * s, 2.5 * s, 1.8 * s)) {
          c = detail::scale(skin, 0.35);  // nostril
        }
      }
      // Lips.
      if (detail::in_ellipse(fx, fy, cx, mouth_y, mouth_w, 7 * s)) {
        c = lips;
        if (std::abs(fy - mouth_y) < 1.0 * s) c = detail::scale(lips, 0.45);
      }
      const double noise = rng.uniform(-2.0, 2.0);
      detail::paint(&img, x, y, {c[0] + noise, c[1] + noise, c[2] + noise});
    }
  }
  return img;
}

// Noise-free image of constant-colored regions: a background, a rectangle,
// an ellipse and a triangle, with moderate color differences between them.
inline RasterImage piecewise_constant(std::uint32_t seed, int size = 256) {
  detail::Rng rng(seed);
  RasterImage img(size, size, 3);
  // Four gray levels 55 apart (jittered by +-5) in shuffled order, each with
  // a zero-luminance tint, so every boundary is a step of >= 45 gray levels.
  std::array<double, 4> levels = {45.0, 100.0, 155.0, 210.0};
  for (int i = 3; i > 0; --i) std::swap(levels[i], levels[rng.integer(0, i)]);
  std::size_t next_level = 0;
  auto pick = [&] {
    const double level = levels[next_level++] + rng.uniform(-5, 5);
    const double tr = rng.uniform(-20, 20);
    const double tg = rng.uniform(-20, 20);
    const double tb = rng.uniform(-20, 20);
    const double shift = 0.299 * tr + 0.587 * tg + 0.114 * tb;
    return detail::Color{level + tr - shift, level + tg - shift, level + tb - shift};
  };
  const detail::Color bg = pick();
  const detail::Color rect_c = pick();
  const detail::Color ell_c = pick();
  const detail::Color tri_c = pick();
  const double s = size / 256.0;
  const int rx0 = static_cast<int>(rng.uniform(20, 60) * s);
  const int ry0 = static_cast<int>(rng.uniform(20, 60) * s);
  const int rx1 = rx0 + static_cast<int>(rng.uniform(60, 100) * s);
  const int ry1 = ry0 + static_cast<int>(rng.uniform(50, 90) * s);
  const double ecx = rng.uniform(150, 200) * s;
  const double ecy = rng.uniform(60, 110) * s;
  const double erx = rng.uniform(28, 45) * s;
  const double ery = rng.uniform(22, 40) * s;
  const std::array<std::array<double, 2>, 3> tri = {{
      {rng.uniform(40, 90) * s, rng.uniform(225, 240) * s},
      {rng.uniform(150, 230) * s, rng.uniform(200, 240) * s},
      {rng.uniform(100, 160) * s, rng.uniform(150, 175) * s},
  }};
  auto edge_fn = [](const std::array<double, 2>& a, const std::array<double, 2>& b,
                    double x, double y) {
    return (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
  };
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double fx = x + 0.5;
      const double fy = y + 0.5;
      detail::Color c = bg;
      if (x >= rx0 && x < rx1 && y >= ry0 && y < ry1) c = rect_c;
      if (detail::in_ellipse(fx, fy, ecx, ecy, erx, ery)) c = ell_c;
      const double e0 = edge_fn(tri[0], tri[1], fx, fy);
      const double e1 = edge_fn(tri[1], tri[2], fx, fy);
      const double e2 = edge_fn(tri[2], tri[0], fx, fy);
      if ((e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0)) c = tri_c;
      detail::paint(&img, x, y, c);
    }
  }
  return img;
}

}  // namespace vcmf::synth

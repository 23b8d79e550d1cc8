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
#include <cmath>
#include <cstdlib>
#include <vector>

namespace vcmf {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}
  explicit constexpr Vec2(Point p) : x(p.x), y(p.y) {}

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

struct Cubic {
  Vec2 p0, p1, p2, p3;

  Vec2 at(double t) const {
    const double s = 1.0 - t;
    return (s * s * s) * p0 + (3.0 * s * s * t) * p1 + (3.0 * s * t * t) * p2 +
           (t * t * t) * p3;
  }
  Vec2 derivative(double t) const {
    const double s = 1.0 - t;
    return (3.0 * s * s) * (p1 - p0) + (6.0 * s * t) * (p2 - p1) +
           (3.0 * t * t) * (p3 - p2);
  }
  Vec2 second_derivative(double t) const {
    return (6.0 * (1.0 - t)) * (p2 - 2.0 * p1 + p0) + (6.0 * t) * (p3 - 2.0 * p2 + p1);
  }
  // de Casteljau split at t = 1/2.
  void split(Cubic* left, Cubic* right) const {
    const Vec2 a = 0.5 * (p0 + p1);
    const Vec2 b = 0.5 * (p1 + p2);
    const Vec2 c = 0.5 * (p2 + p3);
    const Vec2 d = 0.5 * (a + b);
    const Vec2 e = 0.5 * (b + c);
    const Vec2 m = 0.5 * (d + e);
    *left = {p0, a, d, m};
    *right = {m, e, c, p3};
  }
};

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

namespace detail {

inline void flatten(const Cubic& c, double flatness, int depth,
                    std::vector<Vec2>* out) {
  const double d1 = point_segment_distance(c.p1, c.p0, c.p3);
  const double d2 = point_segment_distance(c.p2, c.p0, c.p3);
  if (depth >= 16 || std::max(d1, d2) <= flatness) {
    out->push_back(c.p3);
    return;
  }
  Cubic left, right;
  c.split(&left, &right);
  flatten(left, flatness, depth + 1, out);
  flatten(right, flatness, depth + 1, out);
}

}  // namespace detail

// Polyline approximation by recursive midpoint subdivision until both inner
// control points are within `flatness` of the chord. Includes both endpoints.
inline std::vector<Vec2> flatten_cubic(const Cubic& c, double flatness = 0.25) {
  std::vector<Vec2> out{c.p0};
  detail::flatten(c, flatness, 0, &out);
  return out;
}

// Raster snapping rule shared by encoder and decoder: x rounds half up
// (toward +x), y rounds half down (toward -y).
inline Point snap_to_pixel(Vec2 p) {
  return {static_cast<int>(std::floor(p.x + 0.5)),
          static_cast<int>(std::ceil(p.y - 0.5))};
}

// Integer Bresenham from a to b inclusive, visiting pixels in order.
template <typename Fn>
void bresenham(Point a, Point b, Fn&& visit) {
  int x = a.x;
  int y = a.y;
  const int dx = std::abs(b.x - a.x);
  const int dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1;
  const int sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  while (true) {
    visit(Point{x, y});
    if (x == b.x && y == b.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

}  // namespace vcmf

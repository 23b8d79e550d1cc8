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
#include <optional>
#include <span>
#include <vector>

#include "vcmf/error.hpp"
#include "vcmf/geometry.hpp"
#include "vcmf/image.hpp"
#include "vcmf/recon.hpp"
#include "vcmf/vectorize.hpp"

namespace vcmf {

struct SamplingParams {
  int offset_d = 2;
  int min_segment_len = 4;
  int collision_search = 3;

  void validate() const {
    if (offset_d < 1 || min_segment_len < 1 || collision_search < 1) {
      throw Error(ErrorCode::kInvalidArgument, "sampling parameters must be >= 1");
    }
  }
};

// A sampling position and the unit step that pushes it further from its
// segment when it collides with an edge pixel.
struct RefCandidate {
  Point pos;
  Point outward;

  bool operator==(const RefCandidate&) const = default;
};

namespace detail {

inline int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

inline bool inside(Point p, int width, int height) {
  return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
}

}  // namespace detail

// Two points either side of a line segment's midpoint: a vertical pair when
// the segment is closer to horizontal (|dy| < |dx|), otherwise a horizontal
// pair. The offset coordinate rounds away from the segment, the other half
// up. The minus-side point comes first; out-of-bounds points are dropped.
inline std::vector<RefCandidate> line_ref_candidates(Point p0, Point p1,
                                                     const SamplingParams& params,
                                                     int width, int height) {
  std::vector<RefCandidate> out;
  const int dx = p1.x - p0.x;
  const int dy = p1.y - p0.y;
  if (std::hypot(dx, dy) < params.min_segment_len) return out;
  const double mx = 0.5 * (p0.x + p1.x);
  const double my = 0.5 * (p0.y + p1.y);
  const double d = params.offset_d;
  RefCandidate minus, plus;
  if (std::abs(dy) < std::abs(dx)) {
    const int x = detail::round_half_up(mx);
    minus = {{x, static_cast<int>(std::floor(my - d))}, {0, -1}};
    plus = {{x, static_cast<int>(std::ceil(my + d))}, {0, 1}};
  } else {
    const int y = detail::round_half_up(my);
    minus = {{static_cast<int>(std::floor(mx - d)), y}, {-1, 0}};
    plus = {{static_cast<int>(std::ceil(mx + d)), y}, {1, 0}};
  }
  for (const RefCandidate& c : {minus, plus}) {
    if (detail::inside(c.pos, width, height)) out.push_back(c);
  }
  return out;
}

inline std::vector<Point> line_ref_points(Point p0, Point p1, const SamplingParams& params,
                                          int width, int height) {
  std::vector<Point> out;
  for (const auto& c : line_ref_candidates(p0, p1, params, width, height)) {
    out.push_back(c.pos);
  }
  return out;
}

struct ContactPoint {
  double t = 0.5;
  Vec2 point;
  bool fallback = true;
};

// Point where the curve's tangent is parallel to the chord ps->pt. The
// condition cross(B'(t), pt - ps) = 0 is quadratic in t; among roots in
// [0, 1] the one nearest 1/2 wins (smaller t on a tie). No root means t=1/2.
inline ContactPoint curve_contact_point(Vec2 ps, Vec2 p1, Vec2 p2, Vec2 pt) {
  const Vec2 chord = pt - ps;
  const double a = cross(p1 - ps, chord);
  const double b = cross(p2 - p1, chord);
  const double e = cross(pt - p2, chord);
  const double qa = a - 2.0 * b + e;
  const double qb = 2.0 * (b - a);
  const double qc = a;
  const double scale = std::abs(a) + std::abs(b) + std::abs(e);

  std::vector<double> roots;
  if (scale > 0.0) {
    const double eps = 1e-12 * scale;
    if (std::abs(qa) <= eps) {
      if (std::abs(qb) > eps) roots.push_back(-qc / qb);
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
        roots.push_back(q / qa);
        if (q != 0.0) roots.push_back(qc / q);
      }
    }
  }
  const Cubic curve{ps, p1, p2, pt};
  ContactPoint best;
  double best_gap = 2.0;
  for (double r : roots) {
    if (!(r >= -1e-12 && r <= 1.0 + 1e-12)) continue;
    r = std::clamp(r, 0.0, 1.0);
    const double gap = std::abs(r - 0.5);
    if (gap < best_gap || (gap == best_gap && r < best.t)) {
      best_gap = gap;
      best.t = r;
      best.fallback = false;
    }
  }
  best.point = curve.at(best.t);
  return best;
}

// One point on the inner (chord) side of a curve, offset from the contact
// point along the axis picked by the tangent slope, rounding toward the
// inner direction. Empty when it falls outside the image.
inline std::optional<RefCandidate> curve_ref_candidate(Point ps, Point p1, Point p2,
                                                       Point pt,
                                                       const SamplingParams& params,
                                                       int width, int height) {
  const ContactPoint contact = curve_contact_point(Vec2(ps), Vec2(p1), Vec2(p2), Vec2(pt));
  const Cubic curve{Vec2(ps), Vec2(p1), Vec2(p2), Vec2(pt)};
  const Vec2 tangent = curve.derivative(contact.t);
  const Vec2 mid = 0.5 * (Vec2(ps) + Vec2(pt));
  const Vec2 q = contact.point;
  const double d = params.offset_d;
  RefCandidate c;
  if (std::abs(tangent.y) < std::abs(tangent.x)) {
    const int dir = (mid.y - q.y) < 0.0 ? -1 : 1;
    const double y = q.y + dir * d;
    c = {{detail::round_half_up(q.x),
          static_cast<int>(dir < 0 ? std::floor(y) : std::ceil(y))},
         {0, dir}};
  } else {
    const int dir = (mid.x - q.x) < 0.0 ? -1 : 1;
    const double x = q.x + dir * d;
    c = {{static_cast<int>(dir < 0 ? std::floor(x) : std::ceil(x)),
          detail::round_half_up(q.y)},
         {dir, 0}};
  }
  if (!detail::inside(c.pos, width, height)) return std::nullopt;
  return c;
}

inline std::optional<Point> curve_ref_point(Point ps, Point p1, Point p2, Point pt,
                                            const SamplingParams& params, int width,
                                            int height) {
  auto c = curve_ref_candidate(ps, p1, p2, pt, params, width, height);
  if (!c) return std::nullopt;
  return c->pos;
}

// Reference positions for a decoded drawing, in operation order. `edges`
// must be rasterize(d). A candidate on an edge pixel walks outward up to
// collision_search pixels to the first clear pixel or is dropped; repeated
// positions keep their first occurrence. Encoder and decoder both call this
// on the decoded drawing, so positions never need to be transmitted.
inline std::vector<Point> sample_positions(const VectorDrawing& d, const BinaryMap& edges,
                                           const SamplingParams& params = {}) {
  params.validate();
  if (edges.width() != d.width || edges.height() != d.height) {
    throw Error(ErrorCode::kShapeMismatch, "edge map does not match drawing size");
  }
  std::vector<Point> out;
  BinaryMap taken(d.width, d.height);
  auto accept = [&](RefCandidate c) {
    Point p = c.pos;
    for (int step = 0; edges.get(p.x, p.y); ++step) {
      if (step == params.collision_search) return;
      p = {p.x + c.outward.x, p.y + c.outward.y};
      if (!detail::inside(p, d.width, d.height)) return;
    }
    if (taken.get(p.x, p.y)) return;
    taken.set(p.x, p.y);
    out.push_back(p);
  };
  Point cur{0, 0};
  for (const PathOp& op : d.ops) {
    if (op.kind == OpKind::kLine && !(op.to == cur)) {
      for (const auto& c : line_ref_candidates(cur, op.to, params, d.width, d.height)) {
        accept(c);
      }
    } else if (op.kind == OpKind::kCurve && !(op.to == cur)) {
      if (auto c = curve_ref_candidate(cur, op.c1, op.c2, op.to, params, d.width, d.height)) {
        accept(*c);
      }
    }
    cur = op.to;
  }
  return out;
}

inline std::vector<Rgb> gather_colors(const RasterImage& img, std::span<const Point> positions) {
  if (img.channels() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "color gathering needs a 3-channel image");
  }
  std::vector<Rgb> out;
  out.reserve(positions.size());
  for (const Point& p : positions) {
    if (!img.contains(p.x, p.y)) {
      throw Error(ErrorCode::kCoordinateOutOfBounds, "position outside image");
    }
    out.push_back({img.at(p.x, p.y, 0), img.at(p.x, p.y, 1), img.at(p.x, p.y, 2)});
  }
  return out;
}

}  // namespace vcmf

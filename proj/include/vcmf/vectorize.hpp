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
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "vcmf/edge.hpp"
#include "vcmf/error.hpp"
#include "vcmf/geometry.hpp"
#include "vcmf/image.hpp"

namespace vcmf {

enum class OpKind : std::uint8_t { kMove = 'M', kLine = 'L', kCurve = 'C' };

// One drawing operation. Move and Line use only `to`; Curve also uses the
// two intermediate control points c1 and c2.
struct PathOp {
  OpKind kind = OpKind::kMove;
  Point c1;
  Point c2;
  Point to;

  static PathOp Move(Point p) { return {OpKind::kMove, {}, {}, p}; }
  static PathOp Line(Point p) { return {OpKind::kLine, {}, {}, p}; }
  static PathOp Curve(Point a, Point b, Point t) { return {OpKind::kCurve, a, b, t}; }

  bool operator==(const PathOp&) const = default;
};

struct VectorDrawing {
  int width = 0;
  int height = 0;
  std::vector<PathOp> ops;

  bool in_bounds(Point p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }

  // Throws kInvalidDrawing / kCoordinateOutOfBounds on a broken invariant.
  void validate() const {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const PathOp& op = ops[i];
      if (i == 0 && op.kind != OpKind::kMove) {
        throw Error(ErrorCode::kInvalidDrawing, "drawing must start with Move");
      }
      if (i > 0 && op.kind == OpKind::kMove && ops[i - 1].kind == OpKind::kMove) {
        throw Error(ErrorCode::kInvalidDrawing, "consecutive Move operations");
      }
      bool ok = in_bounds(op.to);
      if (op.kind == OpKind::kCurve) ok = ok && in_bounds(op.c1) && in_bounds(op.c2);
      if (!ok) {
        throw Error(ErrorCode::kCoordinateOutOfBounds,
                    "op " + std::to_string(i) + " leaves the image");
      }
    }
  }

  bool operator==(const VectorDrawing&) const = default;
};

// Ordered 8-adjacent pixels; a closed chain repeats its first pixel last.
using PixelChain = std::vector<Point>;

inline bool is_closed(const PixelChain& chain) {
  return chain.size() >= 4 && chain.front() == chain.back();
}

// ---------------------------------------------------------------------------
// Tracing

namespace detail {

// Link graph over set pixels. A diagonal pair is linked only when neither
// shared 4-neighbor is set, so the corner pixels of a junction or staircase
// do not form spurious triangles.
class LinkGraph {
 public:
  explicit LinkGraph(const BinaryMap& map) : map_(map) {}

  bool linked(Point a, Point b) const {
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    if (std::abs(dx) > 1 || std::abs(dy) > 1 || (dx == 0 && dy == 0)) return false;
    if (!map_.test(a.x, a.y) || !map_.test(b.x, b.y)) return false;
    if (dx != 0 && dy != 0) {
      return !map_.test(a.x + dx, a.y) && !map_.test(a.x, a.y + dy);
    }
    return true;
  }

  // Neighbors in a fixed order: 4-neighbors (N, E, S, W) then diagonals.
  template <typename Fn>
  void for_each_link(Point p, Fn&& fn) const {
    static constexpr std::array<std::array<int, 2>, 8> kOrder = {{
        {0, -1}, {1, 0}, {0, 1}, {-1, 0}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1},
    }};
    for (auto [dx, dy] : kOrder) {
      const Point q{p.x + dx, p.y + dy};
      if (linked(p, q)) fn(q);
    }
  }

  int degree(Point p) const {
    int n = 0;
    for_each_link(p, [&](Point) { ++n; });
    return n;
  }

 private:
  const BinaryMap& map_;
};

}  // namespace detail

// Splits a thin edge map into pixel chains. Chains end at endpoints and at
// junction pixels (three or more links); each junction pixel belongs to the
// first chain that reaches it. Scan order: endpoints, junctions, then
// whatever remains (pure cycles). Single-pixel chains are dropped.
inline std::vector<PixelChain> trace_chains(const BinaryMap& map) {
  const int w = map.width();
  const int h = map.height();
  const detail::LinkGraph graph(map);
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
  std::vector<int> degree(static_cast<std::size_t>(w) * h, 0);
  auto idx = [w](Point p) { return static_cast<std::size_t>(p.y) * w + p.x; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (map.get(x, y)) degree[idx({x, y})] = graph.degree({x, y});
    }
  }
  auto is_junction = [&](Point p) { return degree[idx(p)] >= 3; };

  std::vector<PixelChain> chains;
  auto trace_from = [&](Point start) {
    PixelChain chain{start};
    visited[idx(start)] = 1;
    Point cur = start;
    while (!(chain.size() > 1 && is_junction(cur))) {
      bool advanced = false;
      graph.for_each_link(cur, [&](Point q) {
        if (advanced || visited[idx(q)]) return;
        visited[idx(q)] = 1;
        chain.push_back(q);
        cur = q;
        advanced = true;
      });
      if (!advanced) break;
    }
    if (chain.size() >= 3 && graph.linked(chain.back(), start)) {
      chain.push_back(start);
    }
    if (chain.size() >= 2) chains.push_back(std::move(chain));
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Point p{x, y};
      if (map.get(x, y) && !visited[idx(p)] && degree[idx(p)] == 1) trace_from(p);
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Point p{x, y};
      if (!map.get(x, y) || !is_junction(p)) continue;
      if (!visited[idx(p)]) trace_from(p);
      graph.for_each_link(p, [&](Point q) {
        if (!visited[idx(q)]) trace_from(q);
      });
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Point p{x, y};
      if (map.get(x, y) && !visited[idx(p)]) trace_from(p);
    }
  }
  return chains;
}

// ---------------------------------------------------------------------------
// Fitting

struct FitParams {
  double tolerance = 4.0;          // squared pixels
  double corner_angle_deg = 60.0;  // turn angle that splits a chain
  int corner_window = 4;           // pixels on each side of a corner candidate
  double corner_smooth_fraction = 0.25;  // see detail::confirmed_corners

  void validate() const {
    if (!(tolerance > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "fit tolerance must be > 0");
    }
    if (!(corner_smooth_fraction >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "corner smooth fraction must be >= 0");
    }
    if (corner_window < 1) {
      throw Error(ErrorCode::kInvalidArgument, "corner window must be >= 1");
    }
  }
};

namespace detail {

// Turn angle in degrees at index i between p[i]-p[i-k] and p[i+k]-p[i].
inline double turn_angle(std::span<const Point> pts, std::size_t i, std::size_t k) {
  const Vec2 in = Vec2(pts[i]) - Vec2(pts[i - k]);
  const Vec2 out = Vec2(pts[i + k]) - Vec2(pts[i]);
  const double denom = norm(in) * norm(out);
  if (denom == 0.0) return 0.0;
  const double c = std::clamp(dot(in, out) / denom, -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

// Indices (exclusive of the ends) where the chain turns sharply; one per run
// of consecutive candidates, at the run's largest angle.
inline std::vector<std::size_t> find_corners(std::span<const Point> pts,
                                             const FitParams& params) {
  std::vector<std::size_t> corners;
  const std::size_t k = static_cast<std::size_t>(params.corner_window);
  if (pts.size() < 2 * k + 1) return corners;
  std::size_t best = 0;
  double best_angle = -1.0;
  bool in_run = false;
  for (std::size_t i = k; i + k < pts.size(); ++i) {
    const double a = turn_angle(pts, i, k);
    if (a > params.corner_angle_deg) {
      if (!in_run || a > best_angle) {
        best = i;
        best_angle = a;
      }
      in_run = true;
    } else if (in_run) {
      corners.push_back(best);
      in_run = false;
      best_angle = -1.0;
    }
  }
  if (in_run) corners.push_back(best);
  return corners;
}

inline double max_line_error2(std::span<const Point> pts) {
  const Vec2 a(pts.front());
  const Vec2 b(pts.back());
  double worst = 0.0;
  for (const Point& p : pts) {
    const double d = point_segment_distance(Vec2(p), a, b);
    worst = std::max(worst, d * d);
  }
  return worst;
}

inline std::vector<double> chord_parameters(std::span<const Point> pts) {
  std::vector<double> u(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    u[i] = u[i - 1] + norm(Vec2(pts[i]) - Vec2(pts[i - 1]));
  }
  const double total = u.back();
  for (auto& v : u) v = total > 0.0 ? v / total : 0.0;
  return u;
}

// Least-squares cubic with fixed endpoints and fixed end tangent directions.
inline Cubic least_squares_cubic(std::span<const Point> pts,
                                 const std::vector<double>& u, Vec2 t1, Vec2 t2) {
  const Vec2 p0(pts.front());
  const Vec2 p3(pts.back());
  double c00 = 0, c01 = 0, c11 = 0, x0 = 0, x1 = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double t = u[i];
    const double s = 1.0 - t;
    const double b0 = s * s * s, b1 = 3 * s * s * t, b2 = 3 * s * t * t, b3 = t * t * t;
    const Vec2 a1 = b1 * t1;
    const Vec2 a2 = b2 * t2;
    c00 += dot(a1, a1);
    c01 += dot(a1, a2);
    c11 += dot(a2, a2);
    const Vec2 tmp = Vec2(pts[i]) - ((b0 + b1) * p0 + (b2 + b3) * p3);
    x0 += dot(a1, tmp);
    x1 += dot(a2, tmp);
  }
  const double det = c00 * c11 - c01 * c01;
  const double seg = norm(p3 - p0);
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  if (std::abs(det) > 1e-12) {
    alpha1 = (x0 * c11 - x1 * c01) / det;
    alpha2 = (c00 * x1 - c01 * x0) / det;
  }
  const double eps = 1e-6 * seg;
  if (alpha1 < eps || alpha2 < eps) {
    alpha1 = alpha2 = seg / 3.0;
  }
  return {p0, p0 + alpha1 * t1, p3 + alpha2 * t2, p3};
}

// One Newton step per point toward the nearest curve parameter.
inline void reparameterize(const Cubic& c, std::span<const Point> pts,
                           std::vector<double>* u) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double t = (*u)[i];
    const Vec2 d = c.at(t) - Vec2(pts[i]);
    const Vec2 d1 = c.derivative(t);
    const Vec2 d2 = c.second_derivative(t);
    const double num = dot(d, d1);
    const double den = dot(d1, d1) + dot(d, d2);
    if (std::abs(den) > 1e-12) (*u)[i] = std::clamp(t - num / den, 0.0, 1.0);
  }
}

inline Vec2 unit(Vec2 v) {
  const double n = norm(v);
  return n > 0.0 ? (1.0 / n) * v : Vec2{0.0, 0.0};
}

inline constexpr double kCheckFlatness = 0.05;

// Conservative squared distance from each point to the curve, measured on a
// fine flattening; also reports the index of the worst point.
inline double max_curve_error2(const Cubic& c, std::span<const Point> pts,
                               std::size_t* worst_index) {
  const auto poly = flatten_cubic(c, kCheckFlatness);
  double worst = 0.0;
  *worst_index = pts.size() / 2;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < poly.size(); ++j) {
      best = std::min(best, point_segment_distance(Vec2(pts[i]), poly[j], poly[j + 1]));
    }
    if (poly.size() == 1) best = norm(Vec2(pts[i]) - poly[0]);
    const double e = (best + kCheckFlatness) * (best + kCheckFlatness);
    if (e > worst) {
      worst = e;
      *worst_index = i;
    }
  }
  return worst;
}

inline Point clamp_point(Vec2 v, int width, int height) {
  return {std::clamp(static_cast<int>(std::lround(v.x)), 0, width - 1),
          std::clamp(static_cast<int>(std::lround(v.y)), 0, height - 1)};
}

// Least-squares cubic with quantized control points, kept if its error is
// within tol; on failure reports the worst point of the first attempt.
inline bool fit_single_cubic(std::span<const Point> pts, double tol, int width, int height,
                             PathOp* op, std::size_t* split) {
  const std::size_t k = std::min<std::size_t>(3, pts.size() - 1);
  const Vec2 t1 = unit(Vec2(pts[k]) - Vec2(pts.front()));
  const Vec2 t2 = unit(Vec2(pts[pts.size() - 1 - k]) - Vec2(pts.back()));
  auto u = chord_parameters(pts);
  for (int attempt = 0; attempt < 5; ++attempt) {
    const Cubic fitted = least_squares_cubic(pts, u, t1, t2);
    const Point c1 = clamp_point(fitted.p1, width, height);
    const Point c2 = clamp_point(fitted.p2, width, height);
    const Cubic quantized{Vec2(pts.front()), Vec2(c1), Vec2(c2), Vec2(pts.back())};
    std::size_t worst = 0;
    const double err = max_curve_error2(quantized, pts, &worst);
    if (err <= tol) {
      *op = PathOp::Curve(c1, c2, pts.back());
      return true;
    }
    if (attempt == 0) *split = worst;
    reparameterize(fitted, pts, &u);
  }
  return false;
}

inline void fit_piece(std::span<const Point> pts, const FitParams& params,
                      int width, int height, std::vector<PathOp>* ops) {
  if (pts.size() <= 2 || max_line_error2(pts) <= params.tolerance) {
    ops->push_back(PathOp::Line(pts.back()));
    return;
  }
  PathOp op;
  std::size_t split = pts.size() / 2;
  if (fit_single_cubic(pts, params.tolerance, width, height, &op, &split)) {
    ops->push_back(op);
    return;
  }
  split = std::clamp<std::size_t>(split, 1, pts.size() - 2);
  fit_piece(pts.subspan(0, split + 1), params, width, height, ops);
  fit_piece(pts.subspan(split), params, width, height, ops);
}

// Corners that survive smoothing: a candidate is dropped when the span from
// the previous cut to the next candidate (or chain end) is not a line but is
// fit by one cubic within corner_smooth_fraction * tolerance.
inline std::vector<std::size_t> confirmed_corners(std::span<const Point> pts,
                                                  const FitParams& params, int width,
                                                  int height) {
  const auto candidates = find_corners(pts, params);
  std::vector<std::size_t> kept;
  std::size_t start = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::size_t end = i + 1 < candidates.size() ? candidates[i + 1] : pts.size() - 1;
    const auto span = pts.subspan(start, end - start + 1);
    PathOp op;
    std::size_t split = 0;
    const bool smooth =
        max_line_error2(span) > params.tolerance &&
        fit_single_cubic(span, params.corner_smooth_fraction * params.tolerance, width,
                         height, &op, &split);
    if (!smooth) {
      kept.push_back(candidates[i]);
      start = candidates[i];
    }
  }
  return kept;
}

inline void fit_open(std::span<const Point> pts, const FitParams& params, int width,
                     int height, std::vector<PathOp>* ops) {
  std::size_t start = 0;
  for (std::size_t corner : confirmed_corners(pts, params, width, height)) {
    fit_piece(pts.subspan(start, corner - start + 1), params, width, height, ops);
    start = corner;
  }
  fit_piece(pts.subspan(start), params, width, height, ops);
}

}  // namespace detail

// Approximates each chain by a Move followed by Line/Curve operations whose
// quantized geometry stays within sqrt(tolerance) of every chain pixel.
// Closed chains are cut at the pixel farthest from their start.
inline VectorDrawing fit_paths(const std::vector<PixelChain>& chains, int width,
                               int height, const FitParams& params = {}) {
  params.validate();
  VectorDrawing d{width, height, {}};
  for (const PixelChain& chain : chains) {
    if (chain.size() < 2) continue;
    d.ops.push_back(PathOp::Move(chain.front()));
    const std::span<const Point> pts(chain);
    if (is_closed(chain)) {
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        const double dd = norm(Vec2(chain[i]) - Vec2(chain.front()));
        if (dd > far_d) {
          far_d = dd;
          far = i;
        }
      }
      detail::fit_open(pts.subspan(0, far + 1), params, width, height, &d.ops);
      detail::fit_open(pts.subspan(far), params, width, height, &d.ops);
    } else {
      detail::fit_open(pts, params, width, height, &d.ops);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Parameter byte stream

namespace detail {

inline std::uint32_t zigzag(std::int32_t v) {
  return (static_cast<std::uint32_t>(v) << 1) ^ static_cast<std::uint32_t>(v >> 31);
}
inline std::int32_t unzigzag(std::uint32_t v) {
  return static_cast<std::int32_t>((v >> 1) ^ (~(v & 1) + 1));
}

inline void put_varint(std::int32_t value, std::vector<std::uint8_t>* out) {
  std::uint32_t v = zigzag(value);
  while (v >= 0x80) {
    out->push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out->push_back(static_cast<std::uint8_t>(v));
}

class ParamReader {
 public:
  explicit ParamReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool done() const { return pos_ >= bytes_.size(); }
  std::uint8_t marker() { return bytes_[pos_++]; }

  std::int32_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0;; shift += 7) {
      if (pos_ >= bytes_.size()) {
        throw Error(ErrorCode::kTruncatedParams, "stream ends inside a varint");
      }
      const std::uint8_t b = bytes_[pos_++];
      if (shift == 28 && (b & 0x70) != 0) {
        throw Error(ErrorCode::kVarintOverflow, "varint exceeds 32 bits");
      }
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) break;
      if (shift == 28) throw Error(ErrorCode::kVarintOverflow, "varint longer than 5 bytes");
    }
    return unzigzag(static_cast<std::uint32_t>(v));
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline constexpr std::uint8_t kMarkerMove = 0x4D;
inline constexpr std::uint8_t kMarkerLine = 0x4C;
inline constexpr std::uint8_t kMarkerCurve = 0x43;

// Marker byte then zigzag varint deltas. Move is relative to the previous
// Move (the first is absolute); Line and Curve points are relative to the
// current point.
inline std::vector<std::uint8_t> serialize_params(const VectorDrawing& d) {
  std::vector<std::uint8_t> out;
  Point last_move{0, 0};
  Point cur{0, 0};
  auto put_rel = [&](Point p, Point origin) {
    detail::put_varint(p.x - origin.x, &out);
    detail::put_varint(p.y - origin.y, &out);
  };
  for (const PathOp& op : d.ops) {
    switch (op.kind) {
      case OpKind::kMove:
        out.push_back(kMarkerMove);
        put_rel(op.to, last_move);
        last_move = op.to;
        break;
      case OpKind::kLine:
        out.push_back(kMarkerLine);
        put_rel(op.to, cur);
        break;
      case OpKind::kCurve:
        out.push_back(kMarkerCurve);
        put_rel(op.c1, cur);
        put_rel(op.c2, cur);
        put_rel(op.to, cur);
        break;
    }
    cur = op.to;
  }
  return out;
}

inline VectorDrawing deserialize_params(std::span<const std::uint8_t> bytes,
                                        int width, int height) {
  VectorDrawing d{width, height, {}};
  detail::ParamReader reader(bytes);
  Point last_move{0, 0};
  Point cur{0, 0};
  auto read_rel = [&](Point origin) {
    const std::int64_t x = static_cast<std::int64_t>(origin.x) + reader.varint();
    const std::int64_t y = static_cast<std::int64_t>(origin.y) + reader.varint();
    if (x < 0 || y < 0 || x >= width || y >= height) {
      throw Error(ErrorCode::kCoordinateOutOfBounds,
                  "decoded point (" + std::to_string(x) + "," + std::to_string(y) +
                      ") outside " + std::to_string(width) + "x" + std::to_string(height));
    }
    return Point{static_cast<int>(x), static_cast<int>(y)};
  };
  while (!reader.done()) {
    const std::uint8_t m = reader.marker();
    PathOp op;
    switch (m) {
      case kMarkerMove:
        op = PathOp::Move(read_rel(last_move));
        last_move = op.to;
        break;
      case kMarkerLine:
        op = PathOp::Line(read_rel(cur));
        break;
      case kMarkerCurve: {
        const Point a = read_rel(cur);
        const Point b = read_rel(cur);
        op = PathOp::Curve(a, b, read_rel(cur));
        break;
      }
      default:
        throw Error(ErrorCode::kUnknownMarker,
                    "marker byte " + std::to_string(static_cast<int>(m)));
    }
    if (d.ops.empty() && op.kind != OpKind::kMove) {
      throw Error(ErrorCode::kInvalidDrawing, "stream must start with Move");
    }
    if (op.kind == OpKind::kMove && !d.ops.empty() &&
        d.ops.back().kind == OpKind::kMove) {
      throw Error(ErrorCode::kInvalidDrawing, "consecutive Move operations");
    }
    cur = op.to;
    d.ops.push_back(op);
  }
  return d;
}

struct OpCounts {
  std::size_t moves = 0;
  std::size_t lines = 0;
  std::size_t curves = 0;
};

inline OpCounts count_ops(const VectorDrawing& d) {
  OpCounts c;
  for (const PathOp& op : d.ops) {
    if (op.kind == OpKind::kMove) ++c.moves;
    if (op.kind == OpKind::kLine) ++c.lines;
    if (op.kind == OpKind::kCurve) ++c.curves;
  }
  return c;
}

// Single-path SVG document using absolute M/L/C commands.
inline std::string to_svg(const VectorDrawing& d) {
  std::string path;
  auto pt = [](Point p) { return std::to_string(p.x) + " " + std::to_string(p.y); };
  for (const PathOp& op : d.ops) {
    if (!path.empty()) path += ' ';
    switch (op.kind) {
      case OpKind::kMove: path += "M" + pt(op.to); break;
      case OpKind::kLine: path += "L" + pt(op.to); break;
      case OpKind::kCurve:
        path += "C" + pt(op.c1) + " " + pt(op.c2) + " " + pt(op.to);
        break;
    }
  }
  const std::string w = std::to_string(d.width);
  const std::string h = std::to_string(d.height);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" +
         h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n  <path d=\"" + path +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n</svg>\n";
}

}  // namespace vcmf

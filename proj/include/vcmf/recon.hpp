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
#include <filesystem>
#include <span>
#include <vector>

#include "vcmf/error.hpp"
#include "vcmf/geometry.hpp"
#include "vcmf/image.hpp"
#include "vcmf/vectorize.hpp"

namespace vcmf {

using Rgb = std::array<std::uint8_t, 3>;

// Curves are flattened to this chord distance before line drawing.
inline constexpr double kRasterFlatness = 0.25;

// 1-pixel strokes: Bresenham for lines; curves are flattened, their vertices
// snapped with snap_to_pixel, and consecutive vertices joined by Bresenham.
inline BinaryMap rasterize(const VectorDrawing& d) {
  BinaryMap map(d.width, d.height);
  auto plot = [&](Point p) {
    if (map.contains(p.x, p.y)) map.set(p.x, p.y);
  };
  Point cur{0, 0};
  for (const PathOp& op : d.ops) {
    switch (op.kind) {
      case OpKind::kMove:
        break;
      case OpKind::kLine:
        bresenham(cur, op.to, plot);
        break;
      case OpKind::kCurve: {
        const Cubic c{Vec2(cur), Vec2(op.c1), Vec2(op.c2), Vec2(op.to)};
        const auto poly = flatten_cubic(c, kRasterFlatness);
        Point prev = cur;
        plot(prev);
        for (std::size_t i = 1; i < poly.size(); ++i) {
          const Point next = i + 1 == poly.size() ? op.to : snap_to_pixel(poly[i]);
          bresenham(prev, next, plot);
          prev = next;
        }
        break;
      }
    }
    cur = op.to;
  }
  return map;
}

struct MaskAndColor {
  BinaryMap mask;
  RasterImage color;
};

inline MaskAndColor build_mask_color(std::span<const Point> positions,
                                     std::span<const Rgb> colors, int width,
                                     int height) {
  if (positions.size() != colors.size()) {
    throw Error(ErrorCode::kShapeMismatch, "positions and colors differ in length");
  }
  MaskAndColor out{BinaryMap(width, height), RasterImage(width, height, 3)};
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Point p = positions[i];
    if (!out.mask.contains(p.x, p.y)) {
      throw Error(ErrorCode::kCoordinateOutOfBounds, "sample position outside image");
    }
    out.mask.set(p.x, p.y);
    for (int c = 0; c < 3; ++c) out.color.at(p.x, p.y, c) = colors[i][c];
  }
  return out;
}

struct ReconParams {
  int max_iterations = 5000;
  double tolerance = 1e-4;       // max per-pixel update, on a 0..1 scale
  double edge_conductance = 0.0;
  std::uint8_t fallback_gray = 128;

  void validate() const {
    if (!(tolerance > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be > 0");
    if (edge_conductance < 0.0 || edge_conductance > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "edge_conductance must be in [0, 1]");
    }
    if (max_iterations < 0) {
      throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 0");
    }
  }
};

struct ReconStats {
  int iterations = 0;                 // sweeps of the slowest channel
  std::vector<double> max_updates;    // per sweep, max over channels (0..1 scale)
};

// Homogeneous diffusion inpainting. Per channel, non-sample pixels solve the
// discrete Laplace equation with the M-set pixels as Dirichlet values,
// zero flux at the image border, and `edge_conductance` on every 4-link that
// touches an edge pixel of E. Components (under positive-conductance links)
// without samples take the mean of all samples, or fallback_gray when there
// are none. Unknowns start at their component's sample mean and are updated
// by row-major Gauss-Seidel sweeps.
inline RasterImage diffuse_reconstruct(const BinaryMap& edges, const BinaryMap& mask,
                                       const RasterImage& color,
                                       const ReconParams& params = {},
                                       ReconStats* stats = nullptr) {
  params.validate();
  const int w = color.width();
  const int h = color.height();
  if (edges.width() != w || edges.height() != h || mask.width() != w ||
      mask.height() != h) {
    throw Error(ErrorCode::kShapeMismatch, "E, M and C dimensions differ");
  }
  const int channels = color.channels();
  const std::size_t n = static_cast<std::size_t>(w) * h;
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  static constexpr std::array<std::array<int, 2>, 4> kLinks = {{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

  auto conductance = [&](int x0, int y0, int x1, int y1) {
    return (edges.get(x0, y0) || edges.get(x1, y1)) ? params.edge_conductance : 1.0;
  };

  // Components under positive-conductance links.
  std::vector<int> component(n, -1);
  int component_count = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (component[idx(x, y)] >= 0) continue;
      const int id = component_count++;
      component[idx(x, y)] = id;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (auto [dx, dy] : kLinks) {
          const int nx = cx + dx;
          const int ny = cy + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          if (component[idx(nx, ny)] >= 0 || conductance(cx, cy, nx, ny) <= 0.0) continue;
          component[idx(nx, ny)] = id;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }

  // Per-component and global sample statistics.
  std::vector<double> comp_sum(static_cast<std::size_t>(component_count) * channels, 0.0);
  std::vector<int> comp_samples(component_count, 0);
  std::vector<double> global_sum(channels, 0.0);
  int sample_count = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      const int id = component[idx(x, y)];
      ++comp_samples[id];
      ++sample_count;
      for (int c = 0; c < channels; ++c) {
        comp_sum[static_cast<std::size_t>(id) * channels + c] += color.at(x, y, c);
        global_sum[c] += color.at(x, y, c);
      }
    }
  }

  // Unknowns: pixels of sampled components that are not samples themselves.
  struct Unknown {
    std::size_t index;
    std::array<std::size_t, 4> neighbor;
    std::array<double, 4> weight;
    int links;
    double weight_sum;
  };
  std::vector<Unknown> unknowns;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask.get(x, y) || comp_samples[component[idx(x, y)]] == 0) continue;
      Unknown u{idx(x, y), {}, {}, 0, 0.0};
      for (auto [dx, dy] : kLinks) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const double g = conductance(x, y, nx, ny);
        if (g <= 0.0) continue;
        u.neighbor[u.links] = idx(nx, ny);
        u.weight[u.links] = g;
        u.weight_sum += g;
        ++u.links;
      }
      unknowns.push_back(u);
    }
  }

  RasterImage out(w, h, channels);
  if (stats != nullptr) *stats = ReconStats{};
  const double stop = params.tolerance * 255.0;
  std::vector<double> field(n);
  for (int c = 0; c < channels; ++c) {
    const double fallback = sample_count > 0 ? global_sum[c] / sample_count
                                             : static_cast<double>(params.fallback_gray);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = idx(x, y);
        const int id = component[i];
        if (mask.get(x, y)) {
          field[i] = color.at(x, y, c);
        } else if (comp_samples[id] > 0) {
          field[i] = comp_sum[static_cast<std::size_t>(id) * channels + c] / comp_samples[id];
        } else {
          field[i] = fallback;
        }
      }
    }
    int sweep = 0;
    for (; sweep < params.max_iterations && !unknowns.empty(); ++sweep) {
      double max_update = 0.0;
      for (const Unknown& u : unknowns) {
        double acc = 0.0;
        for (int k = 0; k < u.links; ++k) acc += u.weight[k] * field[u.neighbor[k]];
        const double v = acc / u.weight_sum;
        max_update = std::max(max_update, std::abs(v - field[u.index]));
        field[u.index] = v;
      }
      if (stats != nullptr) {
        if (stats->max_updates.size() <= static_cast<std::size_t>(sweep)) {
          stats->max_updates.push_back(0.0);
        }
        stats->max_updates[sweep] = std::max(stats->max_updates[sweep], max_update / 255.0);
      }
      if (max_update < stop) {
        ++sweep;
        break;
      }
    }
    if (stats != nullptr) stats->iterations = std::max(stats->iterations, sweep);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double v = std::clamp(field[idx(x, y)], 0.0, 255.0);
        out.at(x, y, c) = static_cast<std::uint8_t>(std::floor(v + 0.5));
      }
    }
  }
  return out;
}

struct EmcBundle {
  BinaryMap edges;
  BinaryMap mask;
  RasterImage color;

  bool operator==(const EmcBundle&) const = default;
};

inline void export_emc(const EmcBundle& emc, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create directory " + dir.string());
  save_image(map_to_image(emc.edges), dir / "E.pgm");
  save_image(map_to_image(emc.mask), dir / "M.pgm");
  save_image(emc.color, dir / "C.ppm");
}

inline EmcBundle load_emc(const std::filesystem::path& dir) {
  return {image_to_map(load_image(dir / "E.pgm")),
          image_to_map(load_image(dir / "M.pgm")), load_image(dir / "C.ppm")};
}

}  // namespace vcmf

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
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "vcmf/error.hpp"
#include "vcmf/geometry.hpp"
#include "vcmf/image.hpp"

namespace vcmf {

inline double bpp(std::size_t stream_bytes, int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "bpp of a zero-area image");
  }
  return 8.0 * static_cast<double>(stream_bytes) /
         (static_cast<double>(width) * static_cast<double>(height));
}

namespace detail {

inline void require_same_shape(const RasterImage& a, const RasterImage& b) {
  if (a.width() != b.width() || a.height() != b.height() ||
      a.channels() != b.channels()) {
    throw Error(ErrorCode::kShapeMismatch, "images differ in shape");
  }
}

}  // namespace detail

inline double mse(const RasterImage& a, const RasterImage& b) {
  detail::require_same_shape(a, b);
  double acc = 0.0;
  auto sa = a.samples();
  auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double d = static_cast<double>(sa[i]) - sb[i];
    acc += d * d;
  }
  return acc / static_cast<double>(sa.size());
}

// +infinity for identical images.
inline double psnr(const RasterImage& a, const RasterImage& b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

// Mean SSIM over all fully-covered 11x11 Gaussian windows (sigma 1.5,
// K1 = 0.01, K2 = 0.03, L = 255), averaged over channels.
inline double ssim(const RasterImage& a, const RasterImage& b) {
  detail::require_same_shape(a, b);
  constexpr int kRadius = 5;
  constexpr int kWin = 2 * kRadius + 1;
  if (a.width() < kWin || a.height() < kWin) {
    throw Error(ErrorCode::kInvalidArgument, "SSIM needs at least 11x11 pixels");
  }
  double taps[kWin];
  double tap_sum = 0.0;
  for (int i = 0; i < kWin; ++i) {
    const double x = i - kRadius;
    taps[i] = std::exp(-x * x / (2.0 * 1.5 * 1.5));
    tap_sum += taps[i];
  }
  for (double& t : taps) t /= tap_sum;

  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  const double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  const int w = a.width();
  const int h = a.height();
  const int ow = w - kWin + 1;
  const int oh = h - kWin + 1;

  // Separable valid-mode filtering of the five moment images.
  auto filter = [&](const std::vector<double>& src) {
    std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < ow; ++x) {
        double acc = 0.0;
        for (int k = 0; k < kWin; ++k) acc += taps[k] * src[static_cast<std::size_t>(y) * w + x + k];
        tmp[static_cast<std::size_t>(y) * ow + x] = acc;
      }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        double acc = 0.0;
        for (int k = 0; k < kWin; ++k) acc += taps[k] * tmp[static_cast<std::size_t>(y + k) * ow + x];
        out[static_cast<std::size_t>(y) * ow + x] = acc;
      }
    }
    return out;
  };

  double total = 0.0;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  for (int c = 0; c < a.channels(); ++c) {
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (int py = 0; py < h; ++py) {
      for (int px = 0; px < w; ++px) {
        const std::size_t i = static_cast<std::size_t>(py) * w + px;
        x[i] = a.at(px, py, c);
        y[i] = b.at(px, py, c);
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
      }
    }
    const auto mx = filter(x), my = filter(y), mxx = filter(xx), myy = filter(yy),
               mxy = filter(xy);
    double acc = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
      const double vx = mxx[i] - mx[i] * mx[i];
      const double vy = myy[i] - my[i] * my[i];
      const double cov = mxy[i] - mx[i] * my[i];
      acc += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    total += acc / static_cast<double>(mx.size());
  }
  return total / a.channels();
}

struct LandmarkSet {
  std::vector<Vec2> points;
  double normalization_distance = 1.0;  // e.g. inter-ocular distance
};

// Mean point-to-point error divided by gt's normalization distance.
inline double nme(const LandmarkSet& pred, const LandmarkSet& gt) {
  if (pred.points.size() != gt.points.size()) {
    throw Error(ErrorCode::kShapeMismatch, "landmark counts differ");
  }
  if (gt.points.empty()) throw Error(ErrorCode::kInvalidArgument, "empty landmark set");
  if (!(gt.normalization_distance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "normalization distance must be > 0");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < gt.points.size(); ++i) {
    acc += norm(pred.points[i] - gt.points[i]);
  }
  return acc / static_cast<double>(gt.points.size()) / gt.normalization_distance;
}

// Fraction of errors at or below `threshold`; 0 for an empty list.
inline double ced(std::span<const double> errors, double threshold) {
  if (errors.empty()) return 0.0;
  const auto hits = std::count_if(errors.begin(), errors.end(),
                                  [&](double e) { return e <= threshold; });
  return static_cast<double>(hits) / static_cast<double>(errors.size());
}

struct MetricsRow {
  std::string name;
  double bpp = 0.0;
  std::optional<double> psnr;
  std::optional<double> ssim;
  std::optional<double> nme;
};

inline std::string csv_header() { return "name,bpp,psnr,ssim,nme"; }

inline std::string to_csv(const MetricsRow& row) {
  std::ostringstream os;
  os.precision(6);
  auto opt = [&](const std::optional<double>& v) {
    if (!v) return;
    if (std::isinf(*v)) {
      os << "inf";
    } else {
      os << std::fixed << *v;
    }
  };
  os << row.name << ',' << std::fixed << row.bpp << ',';
  opt(row.psnr);
  os << ',';
  opt(row.ssim);
  os << ',';
  opt(row.nme);
  return os.str();
}

}  // namespace vcmf

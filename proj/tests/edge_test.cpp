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

#include "vcmf/edge.hpp"

#include <gtest/gtest.h>

#include <random>

namespace vcmf {
namespace {

BinaryMap from_rows(const std::vector<std::string>& rows) {
  BinaryMap m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) m.set(x, y, rows[y][x] == '#');
  }
  return m;
}

// Textbook Zhang-Suen written independently of the library version: explicit
// P2..P9 names, all-pixel marking per subiteration, border treated as 0.
BinaryMap reference_zhang_suen(BinaryMap img) {
  auto px = [&](int x, int y) { return img.test(x, y) ? 1 : 0; };
  bool changed;
  do {
    changed = false;
    for (int step = 0; step < 2; ++step) {
      std::vector<std::pair<int, int>> marked;
      for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
          if (!px(x, y)) continue;
          const int p2 = px(x, y - 1), p3 = px(x + 1, y - 1), p4 = px(x + 1, y),
                    p5 = px(x + 1, y + 1), p6 = px(x, y + 1), p7 = px(x - 1, y + 1),
                    p8 = px(x - 1, y), p9 = px(x - 1, y - 1);
          const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
          const int a = (p2 == 0 && p3 == 1) + (p3 == 0 && p4 == 1) +
                        (p4 == 0 && p5 == 1) + (p5 == 0 && p6 == 1) +
                        (p6 == 0 && p7 == 1) + (p7 == 0 && p8 == 1) +
                        (p8 == 0 && p9 == 1) + (p9 == 0 && p2 == 1);
          const int m1 = step == 0 ? p2 * p4 * p6 : p2 * p4 * p8;
          const int m2 = step == 0 ? p4 * p6 * p8 : p2 * p6 * p8;
          if (b >= 2 && b <= 6 && a == 1 && m1 == 0 && m2 == 0) marked.emplace_back(x, y);
        }
      }
      for (auto [x, y] : marked) img.set(x, y, false);
      changed = changed || !marked.empty();
    }
  } while (changed);
  return img;
}

int component_count(const BinaryMap& m) {
  BinaryMap seen(m.width(), m.height());
  int n = 0;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.get(x, y) || seen.get(x, y)) continue;
      ++n;
      std::vector<std::pair<int, int>> stack{{x, y}};
      seen.set(x, y);
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (m.test(cx + dx, cy + dy) && !seen.get(cx + dx, cy + dy)) {
              seen.set(cx + dx, cy + dy);
              stack.emplace_back(cx + dx, cy + dy);
            }
          }
        }
      }
    }
  }
  return n;
}

BinaryMap random_blobs(std::uint32_t seed, int w, int h) {
  std::mt19937 rng(seed);
  BinaryMap m(w, h);
  for (int k = 0; k < 6; ++k) {
    const int cx = static_cast<int>(rng() % w), cy = static_cast<int>(rng() % h);
    const int rx = 1 + static_cast<int>(rng() % 6), ry = 1 + static_cast<int>(rng() % 6);
    for (int y = cy - ry; y <= cy + ry; ++y) {
      for (int x = cx - rx; x <= cx + rx; ++x) {
        if (m.contains(x, y)) m.set(x, y);
      }
    }
  }
  for (int k = 0; k < 20; ++k) m.set(static_cast<int>(rng() % w), static_cast<int>(rng() % h));
  return m;
}

TEST(DetectEdges, ConstantImageIsEmpty) {
  EXPECT_TRUE(detect_edges(RasterImage(32, 32, 3, 77), {}).none());
}

TEST(DetectEdges, TinyImageIsEmpty) {
  RasterImage img(2, 2, 1);
  img.at(0, 0) = 255;
  EXPECT_TRUE(detect_edges(img, {}).none());
}

TEST(DetectEdges, StepGivesSingleLineAtGradientArgmax) {
  RasterImage img(64, 64, 1);
  for (int y = 0; y < 64; ++y) {
    for (int x = 32; x < 64; ++x) img.at(x, y) = 255;
  }
  // Oracle: per row, first argmax of |horizontal central difference| of a
  // floating-point Gaussian smoothing (replicate borders).
  const double sigma = 1.4;
  const int r = 5;
  std::vector<double> k(2 * r + 1);
  double ks = 0;
  for (int i = -r; i <= r; ++i) ks += k[i + r] = std::exp(-i * i / (2 * sigma * sigma));
  std::vector<double> row(64);
  for (int x = 0; x < 64; ++x) {
    double acc = 0;
    for (int i = -r; i <= r; ++i) acc += k[i + r] * (std::clamp(x + i, 0, 63) >= 32 ? 255.0 : 0.0);
    row[x] = acc / ks;
  }
  int best = 1;
  for (int x = 1; x < 63; ++x) {
    if (std::abs(row[x + 1] - row[x - 1]) > std::abs(row[best + 1] - row[best - 1]) + 1e-9) best = x;
  }
  ASSERT_EQ(best, 31);

  const BinaryMap e = detect_edges(img, {});
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const bool interior_row = y >= 1 && y <= 62;
      EXPECT_EQ(e.get(x, y), interior_row && x == best) << x << "," << y;
    }
  }
}

TEST(DetectEdges, InvariantToBrightnessOffset) {
  RasterImage img(40, 40, 1);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      const int dx = x - 20, dy = y - 18;
      img.at(x, y) = static_cast<std::uint8_t>(dx * dx + dy * dy < 150 ? 150 : 40 + x);
    }
  }
  RasterImage shifted = img;
  for (auto& s : shifted.samples()) s = static_cast<std::uint8_t>(s + 60);
  EXPECT_EQ(detect_edges(img, {}), detect_edges(shifted, {}));
}

TEST(DetectEdges, RejectsBadThresholds) {
  EdgeParams p;
  p.low_threshold = 120;
  EXPECT_THROW(detect_edges(RasterImage(8, 8, 1), p), Error);
}

TEST(PruneComponents, NinePixelsDropped) {
  BinaryMap m(20, 5);
  for (int x = 0; x < 9; ++x) m.set(x + 2, 2);
  EXPECT_TRUE(prune_components(m, 10).none());
}

TEST(PruneComponents, TenPixelsKept) {
  BinaryMap m(20, 5);
  for (int x = 0; x < 10; ++x) m.set(x + 2, 2);
  EXPECT_EQ(prune_components(m, 10), m);
}

TEST(PruneComponents, EmptyStaysEmpty) {
  EXPECT_TRUE(prune_components(BinaryMap(8, 8), 10).none());
}

TEST(PruneComponents, DiagonalChainIsOneComponent) {
  BinaryMap m(12, 12);
  for (int i = 0; i < 10; ++i) m.set(i, i);
  EXPECT_EQ(prune_components(m, 10), m);
}

TEST(PruneComponents, Properties) {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const BinaryMap m = random_blobs(seed, 30, 24);
    EXPECT_EQ(prune_components(m, 1), m);
    const BinaryMap once = prune_components(m, 10);
    EXPECT_EQ(prune_components(once, 10), once);
    for (std::size_t i = 0; i < m.bits().size(); ++i) {
      if (once.bits()[i]) {
        EXPECT_TRUE(m.bits()[i]);
      }
    }
  }
}

TEST(Thin, ThreeWideBarMatchesReference) {
  const BinaryMap bar = from_rows({
      ".......",
      "..###..",
      "..###..",
      "..###..",
      "..###..",
      "..###..",
      "..###..",
      "..###..",
      "..###..",
      ".......",
  });
  const BinaryMap thinned = thin(bar);
  EXPECT_EQ(thinned, reference_zhang_suen(bar));
  // The centerline survives; Zhang-Suen trims the two ends unevenly.
  for (int y = 2; y <= 6; ++y) {
    EXPECT_TRUE(thinned.get(3, y));
    EXPECT_FALSE(thinned.get(2, y));
    EXPECT_FALSE(thinned.get(4, y));
  }
}

TEST(Thin, ThinDiagonalUnchanged) {
  BinaryMap m(10, 10);
  for (int i = 1; i < 9; ++i) m.set(i, i);
  EXPECT_EQ(thin(m), m);
}

TEST(Thin, TwoByTwoBlockKeepsOnePixel) {
  BinaryMap m(6, 6);
  for (int y = 2; y < 4; ++y) {
    for (int x = 2; x < 4; ++x) m.set(x, y);
  }
  EXPECT_TRUE(reference_zhang_suen(m).none());
  const BinaryMap t = thin(m);
  EXPECT_EQ(t.count(), 1u);
  EXPECT_TRUE(t.get(2, 2));
}

TEST(Thin, EmptyStaysEmpty) { EXPECT_TRUE(thin(BinaryMap(5, 5)).none()); }

TEST(Thin, PropertiesOnRandomBlobs) {
  for (std::uint32_t seed = 100; seed < 130; ++seed) {
    const BinaryMap m = random_blobs(seed, 32, 32);
    const BinaryMap t = thin(m);
    const BinaryMap ref = reference_zhang_suen(m);
    // The plain algorithm can erase a whole component; only then may the
    // outputs differ.
    if (component_count(ref) == component_count(m)) {
      EXPECT_EQ(t, ref);
    }
    EXPECT_EQ(thin(t), t);  // nothing left to delete
    EXPECT_EQ(component_count(t), component_count(m));
    for (std::size_t i = 0; i < m.bits().size(); ++i) {
      if (t.bits()[i]) {
        EXPECT_TRUE(m.bits()[i]);
      }
    }
  }
}

}  // namespace
}  // namespace vcmf

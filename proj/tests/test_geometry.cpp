#include <gtest/gtest.h>

#include <random>

#include "rsh/geometry.hpp"
#include "support/test_support.hpp"

namespace rsh {
namespace {

using test::ScriptedSource;

std::vector<int> rows_in_column(const Mask& m, int x) {
  std::vector<int> rows;
  for (int y = 0; y < m.height(); ++y) {
    if (m.at(x, y)) rows.push_back(y);
  }
  return rows;
}

Trapezoid random_trapezoid(std::mt19937_64& gen, int height) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Wider than the default ranges so that edges leave the image on both sides.
  return {u(gen) * 0.6 * height, u(gen) * 1.2 * height, u(gen) * 0.6 * height,
          u(gen) * 1.2 * height};
}

TEST(SampleTrapezoid, MidRangeDraws) {
  ScriptedSource rng({0.5, 0.5, 0.5, 0.5});
  const Trapezoid t = sample_trapezoid(RshParams{}, 100, rng);
  EXPECT_DOUBLE_EQ(t.left_height, 60.0);
  EXPECT_DOUBLE_EQ(t.left_top, 15.0);
  EXPECT_DOUBLE_EQ(t.right_height, 60.0);
  EXPECT_DOUBLE_EQ(t.right_top, 15.0);
  EXPECT_DOUBLE_EQ(t.top_left().y, 15.0);
  EXPECT_DOUBLE_EQ(t.bottom_left().y, 75.0);
  EXPECT_EQ(t.top_left().x, 0.0);
  EXPECT_EQ(t.top_right(100).x, 100.0);
  EXPECT_EQ(rng.consumed(), 4u);
}

TEST(SampleTrapezoid, LowerBoundDraws) {
  ScriptedSource rng({0.0, 0.0, 0.0, 0.0});
  const Trapezoid t = sample_trapezoid(RshParams{}, 100, rng);
  EXPECT_DOUBLE_EQ(t.left_height, 40.0);
  EXPECT_EQ(t.left_top, 0.0);
  EXPECT_DOUBLE_EQ(t.right_height, 40.0);
  EXPECT_EQ(t.right_top, 0.0);
}

TEST(SampleTrapezoid, DrawOrderIsLeftHeightLeftTopRightHeightRightTop) {
  ScriptedSource rng({0.1, 0.2, 0.3, 0.4});
  const Trapezoid t = sample_trapezoid(RshParams{}, 1000, rng);
  EXPECT_DOUBLE_EQ(t.left_height, (0.4 + 0.1 * 0.4) * 1000);
  EXPECT_DOUBLE_EQ(t.left_top, (0.2 * 0.3) * 1000);
  EXPECT_DOUBLE_EQ(t.right_height, (0.4 + 0.3 * 0.4) * 1000);
  EXPECT_DOUBLE_EQ(t.right_top, (0.4 * 0.3) * 1000);
}

TEST(SampleTrapezoid, ZeroRangesGiveDegenerateTrapezoid) {
  RshParams p;
  p.left_upper = p.left_lower = p.right_upper = p.right_lower = {0.0, 0.0};
  ScriptedSource rng({0.3, 0.6, 0.9, 0.1});
  const Trapezoid t = sample_trapezoid(p, 50, rng);
  EXPECT_EQ(t.top_left().y, 0.0);
  EXPECT_EQ(t.bottom_left().y, 0.0);
  EXPECT_EQ(t.top_right(50).y, 0.0);
  EXPECT_EQ(t.bottom_right(50).y, 0.0);
}

TEST(RasterizeMask, HorizontalBand) {
  const Mask m = rasterize_mask({1.0, 3.0, 1.0, 3.0}, 4, 6);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(rows_in_column(m, x), (std::vector<int>{1, 2, 3}));
}

TEST(RasterizeMask, SlopedBottomEdge) {
  const Mask m = rasterize_mask({0.0, 4.0, 0.0, 2.0}, 2, 4);
  EXPECT_EQ(rows_in_column(m, 0), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(rows_in_column(m, 1), (std::vector<int>{0, 1, 2}));
}

TEST(RasterizeMask, ExamplesAgreeWithPointInPolygonOracle) {
  const auto band = test::oracle_mask(test::oracle_quad(4, 1, 3, 1, 3), 4, 6);
  const Mask m1 = rasterize_mask({1.0, 3.0, 1.0, 3.0}, 4, 6);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 4; ++x) EXPECT_EQ(m1.at(x, y), band[y * 4 + x]);
  }
  const auto sloped = test::oracle_mask(test::oracle_quad(2, 0, 4, 0, 2), 2, 4);
  const Mask m2 = rasterize_mask({0.0, 4.0, 0.0, 2.0}, 2, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 2; ++x) EXPECT_EQ(m2.at(x, y), sloped[y * 2 + x]);
  }
}

TEST(RasterizeMask, DegenerateTrapezoidIsEmpty) {
  const Mask m = rasterize_mask({0.0, 0.0, 0.0, 0.0}, 7, 5);
  EXPECT_EQ(m.count(), 0u);
}

TEST(RasterizeMask, BoundaryRowsAreInclusive) {
  // Edges pass exactly through the centres of rows 2 and 4.
  const Mask m = rasterize_mask({2.5, 2.0, 2.5, 2.0}, 3, 8);
  EXPECT_EQ(rows_in_column(m, 1), (std::vector<int>{2, 3, 4}));
}

TEST(RasterizeMask, ClipsOutsideImage) {
  const Mask m = rasterize_mask({5.0, 100.0, 5.0, 100.0}, 3, 10);
  EXPECT_EQ(rows_in_column(m, 0), (std::vector<int>{5, 6, 7, 8, 9}));
  const Mask above = rasterize_mask({20.0, 5.0, 20.0, 5.0}, 3, 10);
  EXPECT_EQ(above.count(), 0u);
}

TEST(RasterizeMask, ColumnRunsAreContiguous) {
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 10'000; ++trial) {
    const int w = size(gen), h = size(gen);
    const Mask m = rasterize_mask(random_trapezoid(gen, h), w, h);
    for (int x = 0; x < w; ++x) {
      const auto rows = rows_in_column(m, x);
      if (!rows.empty()) {
        ASSERT_EQ(rows.back() - rows.front() + 1, static_cast<int>(rows.size()))
            << "trial " << trial << " column " << x;
      }
    }
  }
}

TEST(RasterizeMask, MatchesOracleOnRandomTrapezoids) {
  std::mt19937_64 gen(2);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 1000; ++trial) {
    const int w = size(gen), h = size(gen);
    const Trapezoid t = random_trapezoid(gen, h);
    const Mask m = rasterize_mask(t, w, h);
    const auto expected = test::oracle_mask(
        test::oracle_quad(w, t.left_top, t.left_height, t.right_top, t.right_height), w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        ASSERT_EQ(m.at(x, y), expected[static_cast<std::size_t>(y) * w + x])
            << "trial " << trial << " pixel " << x << "," << y;
      }
    }
  }
}

TEST(Trapezoid, EdgesAreAffineAndHitCorners) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const int w = 1 + static_cast<int>(gen() % 200);
    const Trapezoid t = random_trapezoid(gen, 100);
    EXPECT_NEAR(t.top_at(0.0, w), t.left_top, 1e-9);
    EXPECT_NEAR(t.top_at(w, w), t.right_top, 1e-9);
    EXPECT_NEAR(t.bottom_at(0.0, w), t.left_top + t.left_height, 1e-9);
    EXPECT_NEAR(t.bottom_at(w, w), t.right_top + t.right_height, 1e-9);
    for (int x = 1; x + 1 < w; ++x) {
      const double second_top =
          t.top_at(x + 1.5, w) - 2 * t.top_at(x + 0.5, w) + t.top_at(x - 0.5, w);
      const double second_bottom =
          t.bottom_at(x + 1.5, w) - 2 * t.bottom_at(x + 0.5, w) + t.bottom_at(x - 0.5, w);
      ASSERT_NEAR(second_top, 0.0, 1e-9);
      ASSERT_NEAR(second_bottom, 0.0, 1e-9);
    }
  }
}

TEST(InvertMask, EmptyBecomesFull) {
  const Mask inv = invert_mask(Mask(5, 3));
  EXPECT_EQ(inv.count(), 15u);
  EXPECT_EQ(inv, Mask(5, 3, true));
}

TEST(InvertMask, IsAnInvolution) {
  std::mt19937_64 gen(4);
  for (int i = 0; i < 100; ++i) {
    const Mask m = rasterize_mask(random_trapezoid(gen, 30), 17, 30);
    EXPECT_EQ(invert_mask(invert_mask(m)), m);
  }
}

TEST(InvertMask, ComplementOfBand) {
  const Mask inv = invert_mask(rasterize_mask({1.0, 3.0, 1.0, 3.0}, 4, 6));
  for (int x = 0; x < 4; ++x) EXPECT_EQ(rows_in_column(inv, x), (std::vector<int>{0, 4, 5}));
}

TEST(MaskArea, Examples) {
  EXPECT_EQ(mask_area_fraction(Mask(8, 8)), 0.0);
  EXPECT_EQ(mask_area_fraction(Mask(8, 8, true)), 1.0);
  EXPECT_EQ(mask_area_fraction(rasterize_mask({1.0, 3.0, 1.0, 3.0}, 4, 6)), 0.5);
}

TEST(MaskArea, ComplementSumsToOne) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> size(1, 64);
  for (int i = 0; i < 1000; ++i) {
    const int w = size(gen), h = size(gen);
    const Mask m = rasterize_mask(random_trapezoid(gen, h), w, h);
    const Mask inv = invert_mask(m);
    ASSERT_EQ(m.count() + inv.count(), static_cast<std::size_t>(w) * h);
    // Both quotients are correctly rounded, so they agree with 1 - a to within one ulp.
    ASSERT_DOUBLE_EQ(mask_area_fraction(inv), 1.0 - mask_area_fraction(m));
  }
}

}  // namespace
}  // namespace rsh

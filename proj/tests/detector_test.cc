#include "mreak/detector.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "synthetic.h"

namespace mreak {
namespace {

Image white_square(int size, int x0, int side) {
  Image img(size, size, 1, 0);
  for (int y = x0; y < x0 + side; ++y) {
    for (int x = x0; x < x0 + side; ++x) img.at(x, y) = 255;
  }
  return img;
}

// Harris score written out directly from the definition: Sobel derivatives
// from the replicated image, products summed over the block, det - k tr^2.
double harris_at(const Image& img, int x, int y, double k, int block) {
  auto pix = [&](int u, int v) -> double {
    u = std::clamp(u, 0, img.width() - 1);
    v = std::clamp(v, 0, img.height() - 1);
    return img.at(u, v);
  };
  static constexpr int kSx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  double sxx = 0, syy = 0, sxy = 0;
  const int lo = -(block / 2);
  for (int by = lo; by < lo + block; ++by) {
    for (int bx = lo; bx < lo + block; ++bx) {
      const int u = std::clamp(x + bx, 0, img.width() - 1);
      const int v = std::clamp(y + by, 0, img.height() - 1);
      double gx = 0, gy = 0;
      for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
          gx += kSx[j][i] * pix(u + i - 1, v + j - 1);
          gy += kSx[i][j] * pix(u + i - 1, v + j - 1);
        }
      }
      sxx += gx * gx;
      syy += gy * gy;
      sxy += gx * gy;
    }
  }
  return sxx * syy - sxy * sxy - k * (sxx + syy) * (sxx + syy);
}

TEST(Harris, FlatImageHasZeroResponse) {
  const ResponseMap map = harris_response(Image(20, 20, 1, 90), {});
  for (double v : map.values) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(detect(Image(20, 20, 1, 90), {}, 3).empty());
}

TEST(Harris, StraightEdgeIsNotACorner) {
  Image img(20, 20, 1, 0);
  for (int y = 0; y < 20; ++y) {
    for (int x = 10; x < 20; ++x) img.at(x, y) = 200;
  }
  for (double v : harris_response(img, {}).values) EXPECT_LE(v, 0.0);
  EXPECT_TRUE(detect(img, {}, 2).empty());
}

TEST(Harris, MatchesDirectEvaluation) {
  const Image img = white_square(40, 12, 15);
  std::mt19937 rng(9);
  const Image noisy = testing::random_image(23, 17, 1, rng);
  for (const Image* im : {&img, &noisy}) {
    for (int block : {3, 5}) {
      DetectorParams params;
      params.block = block;
      const ResponseMap map = harris_response(*im, params);
      for (int y = 0; y < im->height(); ++y) {
        for (int x = 0; x < im->width(); ++x) {
          const double expected = harris_at(*im, x, y, params.harris_k, block);
          ASSERT_NEAR(map.at(x, y), expected, 1e-6 * std::abs(expected) + 1e-6)
              << x << "," << y;
        }
      }
    }
  }
}

TEST(Detect, SquareGivesFourCorners) {
  const Image img = white_square(64, 22, 20);
  const auto kps = detect(img, {}, 5);
  ASSERT_EQ(kps.size(), 4u);
  const double corners[4][2] = {{21.5, 21.5}, {41.5, 21.5}, {21.5, 41.5},
                                {41.5, 41.5}};
  for (const auto& c : corners) {
    double best = 1e9;
    for (const Keypoint& kp : kps) {
      best = std::min(best, std::hypot(kp.x - c[0], kp.y - c[1]));
    }
    EXPECT_LE(best, 2.0);
  }
}

TEST(Detect, TruncatesStrongestFirst) {
  const Image img = testing::textured_scene(160, 120, 4);
  const auto all = detect(img, {}, 10);
  ASSERT_GT(all.size(), 2u);
  for (std::size_t i = 1; i < all.size(); ++i) {
    EXPECT_GE(all[i - 1].response, all[i].response);
  }
  DetectorParams params;
  params.max_keypoints = 2;
  const auto two = detect(img, params, 10);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], all[0]);
  EXPECT_EQ(two[1], all[1]);
}

TEST(Detect, RespectsMarginSpacingAndThreshold) {
  const DetectorParams params;
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    const Image img = testing::textured_scene(160, 120, seed);
    const int margin = 12;
    const auto kps = detect(img, params, margin);
    EXPECT_EQ(kps, detect(img, params, margin));
    const ResponseMap map = harris_response(img, params);
    const double max_r = *std::max_element(map.values.begin(), map.values.end());
    for (std::size_t i = 0; i < kps.size(); ++i) {
      EXPECT_GE(kps[i].x, margin);
      EXPECT_GE(kps[i].y, margin);
      EXPECT_LT(kps[i].x, img.width() - margin);
      EXPECT_LT(kps[i].y, img.height() - margin);
      EXPECT_GT(kps[i].response, params.threshold_rel * max_r);
      for (std::size_t j = 0; j < i; ++j) {
        const double cheb = std::max(std::abs(kps[i].x - kps[j].x),
                                     std::abs(kps[i].y - kps[j].y));
        EXPECT_GT(cheb, params.nms_radius);
      }
    }
  }
}

TEST(Detect, RejectsBadInput) {
  EXPECT_THROW(detect(Image(20, 20, 3), {}, 0), std::invalid_argument);
  DetectorParams params;
  params.threshold_rel = 0.0;
  EXPECT_THROW(detect(Image(20, 20, 1), params, 0), std::invalid_argument);
}

}  // namespace
}  // namespace mreak

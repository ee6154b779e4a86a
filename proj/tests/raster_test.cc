#include "mreak/raster.h"

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "mreak/draw.h"
#include "synthetic.h"

namespace mreak {
namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header,
                                   std::initializer_list<int> payload) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (int v : payload) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

TEST(Pnm, LoadsGrayPayload) {
  const Image img = load_pnm(bytes_of("P5 2 2 255\n", {0, 255, 7, 9}));
  EXPECT_EQ(img, Image(2, 2, 1, {0, 255, 7, 9}));
}

TEST(Pnm, SkipsHeaderComments) {
  const Image img =
      load_pnm(bytes_of("P5\n# comment\n1 1\n255\n", {42}));
  EXPECT_EQ(img.at(0, 0), 42);
}

TEST(Pnm, SavesCanonicalHeader) {
  EXPECT_EQ(save_pnm(Image(1, 1, 1, {42})), bytes_of("P5\n1 1\n255\n", {42}));
  EXPECT_EQ(save_pnm(Image(1, 1, 3, {1, 2, 3})),
            bytes_of("P6\n1 1\n255\n", {1, 2, 3}));
}

TEST(Pnm, RejectsBadInput) {
  EXPECT_THROW(load_pnm(bytes_of("P6 1 1 65535\n", {0, 0, 0, 0, 0, 0})),
               FormatError);
  EXPECT_THROW(load_pnm(bytes_of("P5 2 2 255\n", {1, 2, 3})), FormatError);
  EXPECT_THROW(load_pnm(bytes_of("P2 1 1 255\n", {1})), FormatError);
  EXPECT_THROW(load_pnm(bytes_of("P5 x 1 255\n", {1})), FormatError);
  EXPECT_THROW(load_pnm(bytes_of("P5 1 1 255", {})), FormatError);
}

TEST(Pnm, RoundTripIsByteIdentical) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int trial = 0; trial < 50; ++trial) {
    const Image img =
        testing::random_image(dim(rng), dim(rng), trial % 2 ? 3 : 1, rng);
    const auto bytes = save_pnm(img);
    EXPECT_EQ(load_pnm(bytes), img);
    EXPECT_EQ(save_pnm(load_pnm(bytes)), bytes);
  }
}

TEST(Gray, Bt601Weights) {
  EXPECT_EQ(to_gray(Image(1, 1, 3, {255, 255, 255})).at(0, 0), 255);
  EXPECT_EQ(to_gray(Image(1, 1, 3, {255, 0, 0})).at(0, 0), 76);
  EXPECT_EQ(to_gray(Image(1, 1, 3, {0, 0, 255})).at(0, 0), 29);
  EXPECT_EQ(to_gray(Image(1, 1, 3, {0, 255, 0})).at(0, 0), 150);
}

TEST(Gray, IdentityOnSingleChannel) {
  std::mt19937 rng(3);
  const Image img = testing::random_image(9, 7, 1, rng);
  EXPECT_EQ(to_gray(img), img);
  EXPECT_EQ(to_gray(to_gray(img)), img);
}

TEST(Integral, ZeroAndOnes) {
  const IntegralImage zeros = integral(Image(4, 4, 1, 0));
  for (int j = 0; j <= 4; ++j) {
    for (int i = 0; i <= 4; ++i) EXPECT_EQ(zeros.cell(i, j), 0);
  }
  const IntegralImage ones = integral(Image(4, 4, 1, 1));
  EXPECT_EQ(ones.cell(4, 4), 16);
  EXPECT_EQ(ones.cell(0, 3), 0);
  EXPECT_EQ(ones.cell(3, 0), 0);
}

TEST(Integral, BoxSumsMatchBruteForce) {
  std::mt19937 rng(11);
  const Image img = testing::random_image(8, 8, 1, rng);
  const IntegralImage ii(img);
  std::uniform_int_distribution<int> coord(0, 8);
  for (int trial = 0; trial < 50; ++trial) {
    int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    std::int64_t expected = 0;
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) expected += img.at(x, y);
    }
    EXPECT_EQ(ii.box_sum(x0, y0, x1, y1), expected);
  }
}

TEST(Integral, RejectsColor) {
  EXPECT_THROW(integral(Image(2, 2, 3)), std::invalid_argument);
}

TEST(DrawMatches, CanvasLayout) {
  const Image canvas =
      draw_matches(Image(100, 50, 1, 10), Image(80, 60, 3, 20), {});
  EXPECT_EQ(canvas.width(), 180);
  EXPECT_EQ(canvas.height(), 60);
  EXPECT_EQ(canvas.channels(), 3);
}

TEST(DrawMatches, EmptyListIsConcatenation) {
  std::mt19937 rng(5);
  const Image a = testing::random_image(6, 4, 1, rng);
  const Image b = testing::random_image(5, 7, 3, rng);
  const Image canvas = draw_matches(a, b, {});
  for (int y = 0; y < canvas.height(); ++y) {
    for (int x = 0; x < canvas.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        int expected = 0;
        if (x < a.width()) {
          expected = y < a.height() ? a.at(x, y) : 0;
        } else {
          expected = b.at(x - a.width(), y, c);
        }
        ASSERT_EQ(canvas.at(x, y, c), expected) << x << "," << y;
      }
    }
  }
}

TEST(DrawMatches, OffsetsSecondEndpoint) {
  const Image a(10, 5, 1, 0);
  const Image b(10, 5, 1, 0);
  Match m;
  m.branch = Branch::kOpen;
  const std::vector<Match> matches{m};
  const Image canvas = draw_matches(a, b, matches);
  for (int x = 0; x <= a.width(); ++x) {
    EXPECT_EQ(canvas.at(x, 0, 1), 255) << x;
  }
  // Nothing on row 3, below the markers.
  for (int x = 0; x < canvas.width(); ++x) EXPECT_EQ(canvas.at(x, 3, 1), 0);
}

}  // namespace
}  // namespace mreak

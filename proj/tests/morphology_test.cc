#include "mreak/morphology.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "synthetic.h"

namespace mreak {
namespace {

// Direct windowed min/max over the edge-replicated image.
Image brute_rank(const Image& img, const StructuringElement& se, bool take_min) {
  Image out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        int v = take_min ? 255 : 0;
        for (int dy = -se.height / 2; dy <= se.height / 2; ++dy) {
          for (int dx = -se.width / 2; dx <= se.width / 2; ++dx) {
            const int u = img.clamped(x + dx, y + dy, c);
            v = take_min ? std::min(v, u) : std::max(v, u);
          }
        }
        out.at(x, y, c) = static_cast<std::uint8_t>(v);
      }
    }
  }
  return out;
}

Image complement(Image img) {
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(255 - v);
  return img;
}

bool pointwise_le(const Image& a, const Image& b) {
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    if (a.data()[i] > b.data()[i]) return false;
  }
  return true;
}

const StructuringElement kSe = StructuringElement::square(3);

TEST(StructuringElement, RejectsEvenOrEmpty) {
  EXPECT_THROW(StructuringElement(2, 3), std::invalid_argument);
  EXPECT_THROW(StructuringElement(3, 0), std::invalid_argument);
  EXPECT_NO_THROW(StructuringElement(5, 1));
}

TEST(Morphology, ConstantImageUnchanged) {
  const Image img(9, 6, 1, 77);
  EXPECT_EQ(erode(img, kSe), img);
  EXPECT_EQ(dilate(img, kSe), img);
  EXPECT_EQ(open(img, kSe), img);
  EXPECT_EQ(close(img, kSe), img);
}

TEST(Morphology, SinglePeak) {
  Image img(5, 5, 1, 0);
  img.at(2, 2) = 255;
  EXPECT_EQ(erode(img, kSe), Image(5, 5, 1, 0));
  const Image d = dilate(img, kSe);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) {
      const bool inside = std::abs(x - 2) <= 1 && std::abs(y - 2) <= 1;
      EXPECT_EQ(d.at(x, y), inside ? 255 : 0);
    }
  }
}

TEST(Morphology, MatchesBruteForce) {
  std::mt19937 rng(1);
  for (const StructuringElement se : {kSe, StructuringElement(5, 3),
                                      StructuringElement(1, 7)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Image img = testing::random_image(16, 16, 1, rng);
      EXPECT_EQ(erode(img, se), brute_rank(img, se, true));
      EXPECT_EQ(dilate(img, se), brute_rank(img, se, false));
    }
  }
}

TEST(Morphology, ColorIsPerChannel) {
  std::mt19937 rng(2);
  const Image img = testing::random_image(12, 10, 3, rng);
  const Image opened = open(img, kSe);
  const Image closed = close(img, kSe);
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(opened.channel(c), open(img.channel(c), kSe));
    EXPECT_EQ(closed.channel(c), close(img.channel(c), kSe));
  }
}

TEST(Morphology, AlgebraicProperties) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Image x = testing::random_image(16, 16, 1, rng);
    const Image ox = open(x, kSe);
    const Image cx = close(x, kSe);
    EXPECT_EQ(open(ox, kSe), ox);
    EXPECT_EQ(close(cx, kSe), cx);
    EXPECT_TRUE(pointwise_le(ox, x));
    EXPECT_TRUE(pointwise_le(x, cx));
    EXPECT_EQ(dilate(x, kSe), complement(erode(complement(x), kSe)));
    EXPECT_EQ(cx, complement(open(complement(x), kSe)));
  }
}

TEST(Morphology, Increasing) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> bump(0, 40);
  for (int trial = 0; trial < 30; ++trial) {
    const Image x = testing::random_image(16, 16, 1, rng);
    Image y = x;
    for (auto& v : y.data()) v = static_cast<std::uint8_t>(std::min(255, v + bump(rng)));
    EXPECT_TRUE(pointwise_le(open(x, kSe), open(y, kSe)));
    EXPECT_TRUE(pointwise_le(close(x, kSe), close(y, kSe)));
  }
}

}  // namespace
}  // namespace mreak

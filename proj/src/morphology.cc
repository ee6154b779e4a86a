#include "mreak/morphology.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mreak {

StructuringElement::StructuringElement(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1 || w % 2 == 0 || h % 2 == 0) {
    throw std::invalid_argument(
        "structuring element sides must be odd and positive");
  }
}

namespace {

// A flat rectangle separates into a horizontal then a vertical pass, and
// clamped indexing separates the same way, so the result equals the direct
// 2-D window over the replicated image.
template <typename Select>
Image rank_filter(const Image& img, const StructuringElement& se,
                  Select select) {
  const int w = img.width();
  const int h = img.height();
  const int ch = img.channels();
  const int rx = se.width / 2;
  const int ry = se.height / 2;
  if (img.empty()) return img;

  Image horizontal(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        std::uint8_t v = img.clamped(x - rx, y, c);
        for (int dx = -rx + 1; dx <= rx; ++dx) {
          v = select(v, img.clamped(x + dx, y, c));
        }
        horizontal.at(x, y, c) = v;
      }
    }
  }

  Image out(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        std::uint8_t v = horizontal.clamped(x, y - ry, c);
        for (int dy = -ry + 1; dy <= ry; ++dy) {
          v = select(v, horizontal.clamped(x, y + dy, c));
        }
        out.at(x, y, c) = v;
      }
    }
  }
  return out;
}

constexpr auto kMin = [](std::uint8_t a, std::uint8_t b) {
  return std::min(a, b);
};
constexpr auto kMax = [](std::uint8_t a, std::uint8_t b) {
  return std::max(a, b);
};

}  // namespace

Image erode(const Image& img, const StructuringElement& se) {
  return rank_filter(img, se, kMin);
}

Image dilate(const Image& img, const StructuringElement& se) {
  return rank_filter(img, se, kMax);
}

Image open(const Image& img, const StructuringElement& se) {
  return dilate(erode(img, se), se);
}

Image close(const Image& img, const StructuringElement& se) {
  return erode(dilate(img, se), se);
}

}  // namespace mreak

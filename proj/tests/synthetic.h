// Synthetic rasters shared by the unit and acceptance tests.

#ifndef MREAK_TESTS_SYNTHETIC_H_
#define MREAK_TESTS_SYNTHETIC_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "mreak/raster.h"

namespace mreak::testing {

inline Image random_image(int w, int h, int channels, std::mt19937& rng) {
  Image img(w, h, channels);
  std::uniform_int_distribution<int> value(0, 255);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(value(rng));
  return img;
}

// Piecewise-constant scene of overlapping rectangles and triangles on a
// mid-gray background, softened by a 3x3 box blur.
inline Image textured_scene(int w, int h, std::uint32_t seed,
                            int shapes = 90, int max_size = 40) {
  std::mt19937 rng(seed);
  Image img(w, h, 1, 128);
  std::uniform_int_distribution<int> level(10, 245);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < shapes; ++s) {
    const std::uint8_t v = static_cast<std::uint8_t>(level(rng));
    if (s % 3 != 2) {
      const int rw = 6 + static_cast<int>(unit(rng) * (max_size - 6));
      const int rh = 6 + static_cast<int>(unit(rng) * (max_size - 6));
      const int x0 = static_cast<int>(unit(rng) * (w - rw));
      const int y0 = static_cast<int>(unit(rng) * (h - rh));
      for (int y = y0; y < y0 + rh; ++y) {
        for (int x = x0; x < x0 + rw; ++x) img.at(x, y) = v;
      }
    } else {
      double px[3], py[3];
      const double cx = unit(rng) * w;
      const double cy = unit(rng) * h;
      for (int k = 0; k < 3; ++k) {
        px[k] = cx + (unit(rng) - 0.5) * 1.25 * max_size;
        py[k] = cy + (unit(rng) - 0.5) * 1.25 * max_size;
      }
      const int x0 = std::max(0, static_cast<int>(std::min({px[0], px[1], px[2]})));
      const int x1 = std::min(w - 1, static_cast<int>(std::max({px[0], px[1], px[2]})));
      const int y0 = std::max(0, static_cast<int>(std::min({py[0], py[1], py[2]})));
      const int y1 = std::min(h - 1, static_cast<int>(std::max({py[0], py[1], py[2]})));
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          bool pos = false, neg = false;
          for (int k = 0; k < 3; ++k) {
            const int n = (k + 1) % 3;
            const double e = (px[n] - px[k]) * (y - py[k]) -
                             (py[n] - py[k]) * (x - px[k]);
            pos |= e > 0;
            neg |= e < 0;
          }
          if (!(pos && neg)) img.at(x, y) = v;
        }
      }
    }
  }
  Image out(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int sum = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) sum += img.clamped(x + dx, y + dy);
      }
      out.at(x, y) = static_cast<std::uint8_t>((sum + 4) / 9);
    }
  }
  return out;
}

inline Image crop(const Image& img, int x0, int y0, int w, int h) {
  Image out(w, h, img.channels());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
      }
    }
  }
  return out;
}

inline Image apply_gamma(const Image& img, double gamma) {
  Image out = img;
  for (auto& v : out.data()) {
    v = static_cast<std::uint8_t>(
        std::lround(255.0 * std::pow(v / 255.0, gamma)));
  }
  return out;
}

// Rotation by +90 degrees in pixel coordinates (y down) about the center of
// a square image: the offset (a, b) from the center moves to (-b, a).
inline Image rotate90(const Image& img) {
  const int n = img.width();
  Image out(n, n, img.channels());
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        out.at(x, y, c) = img.at(y, n - 1 - x, c);
      }
    }
  }
  return out;
}

// Sum of a few random Gaussian bumps on a dark floor; values stay within
// [20, 200] so brightness offsets up to 55 do not saturate.
inline Image blob_patch(int n, std::uint32_t seed, int blobs = 4) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> field(static_cast<std::size_t>(n) * n, 0.0);
  for (int b = 0; b < blobs; ++b) {
    const double cx = n * (0.2 + 0.6 * unit(rng));
    const double cy = n * (0.2 + 0.6 * unit(rng));
    const double s = n * (0.06 + 0.12 * unit(rng));
    const double a = unit(rng) < 0.5 ? -1.0 : 1.0;
    const double amp = a * (0.5 + 0.5 * unit(rng));
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        field[static_cast<std::size_t>(y) * n + x] +=
            amp * std::exp(-d2 / (2 * s * s));
      }
    }
  }
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  Image img(n, n, 1);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double t = (*hi > *lo) ? (field[i] - *lo) / (*hi - *lo) : 0.5;
    img.data()[i] = static_cast<std::uint8_t>(std::lround(20 + 180 * t));
  }
  return img;
}

}  // namespace mreak::testing

#endif  // MREAK_TESTS_SYNTHETIC_H_

#include "mreak/detector.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace mreak {

void DetectorParams::validate() const {
  if (!(harris_k > 0.0) || block < 1 || !(threshold_rel > 0.0) ||
      !(threshold_rel < 1.0) || nms_radius < 1 || max_keypoints < 1) {
    throw std::invalid_argument("invalid detector parameters");
  }
}

ResponseMap harris_response(const Image& img, const DetectorParams& params) {
  params.validate();
  if (img.channels() != 1) {
    throw std::invalid_argument("harris_response needs a single channel");
  }
  const int w = img.width();
  const int h = img.height();
  if (w <= params.block || h <= params.block) {
    throw std::invalid_argument("image smaller than the Harris block");
  }

  // Products of integer Sobel gradients; exact in 64 bits.
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<std::int64_t> gxx(n), gyy(n), gxy(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto p = [&](int dx, int dy) -> int {
        return img.clamped(x + dx, y + dy);
      };
      const int gx = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) -
                     (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
      const int gy = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) -
                     (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      gxx[i] = static_cast<std::int64_t>(gx) * gx;
      gyy[i] = static_cast<std::int64_t>(gy) * gy;
      gxy[i] = static_cast<std::int64_t>(gx) * gy;
    }
  }

  ResponseMap map{w, h, std::vector<double>(n, 0.0)};
  const int lo = -(params.block / 2);
  const int hi = lo + params.block - 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t a = 0, b = 0, c = 0;
      for (int dy = lo; dy <= hi; ++dy) {
        const int yy = std::clamp(y + dy, 0, h - 1);
        for (int dx = lo; dx <= hi; ++dx) {
          const int xx = std::clamp(x + dx, 0, w - 1);
          const std::size_t i = static_cast<std::size_t>(yy) * w + xx;
          a += gxx[i];
          b += gyy[i];
          c += gxy[i];
        }
      }
      const double det =
          static_cast<double>(a) * static_cast<double>(b) -
          static_cast<double>(c) * static_cast<double>(c);
      const double trace = static_cast<double>(a + b);
      map.values[static_cast<std::size_t>(y) * w + x] =
          det - params.harris_k * trace * trace;
    }
  }
  return map;
}

std::vector<Keypoint> detect(const Image& img, const DetectorParams& params,
                             int margin) {
  const ResponseMap map = harris_response(img, params);
  const int w = map.width;
  const int h = map.height;
  const double max_response =
      *std::max_element(map.values.begin(), map.values.end());
  std::vector<Keypoint> keypoints;
  if (!(max_response > 0.0)) return keypoints;
  const double threshold = params.threshold_rel * max_response;
  const int r = params.nms_radius;

  for (int y = std::max(margin, 0); y < h - margin; ++y) {
    for (int x = std::max(margin, 0); x < w - margin; ++x) {
      const double v = map.at(x, y);
      if (!(v > threshold)) continue;
      // A neighbour suppresses v if strictly stronger, or equal and earlier
      // in row-major order.
      bool is_max = true;
      for (int yy = std::max(y - r, 0); is_max && yy <= std::min(y + r, h - 1);
           ++yy) {
        for (int xx = std::max(x - r, 0); xx <= std::min(x + r, w - 1); ++xx) {
          const double u = map.at(xx, yy);
          const bool earlier = yy < y || (yy == y && xx < x);
          if (u > v || (u == v && earlier)) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) keypoints.push_back({double(x), double(y), v, {}});
    }
  }

  // Stable: equal responses keep row-major order.
  std::stable_sort(keypoints.begin(), keypoints.end(),
                   [](const Keypoint& a, const Keypoint& b) {
                     return a.response > b.response;
                   });
  if (keypoints.size() > static_cast<std::size_t>(params.max_keypoints)) {
    keypoints.resize(params.max_keypoints);
  }
  return keypoints;
}

}  // namespace mreak

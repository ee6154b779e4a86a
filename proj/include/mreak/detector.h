#ifndef MREAK_DETECTOR_H_
#define MREAK_DETECTOR_H_

#include <optional>
#include <vector>

#include "mreak/raster.h"

namespace mreak {

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  double response = 0.0;
  // Radians; assigned by orientation estimation.
  std::optional<double> angle;

  bool operator==(const Keypoint&) const = default;
};

struct DetectorParams {
  double harris_k = 0.04;
  int block = 3;
  double threshold_rel = 0.01;
  int nms_radius = 5;
  int max_keypoints = 2000;

  void validate() const;
};

// Dense per-pixel Harris corner score.
struct ResponseMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

// R = det(M) - k * trace(M)^2, where M sums Sobel gradient products over a
// block x block window. Gradients and the window use edge replication.
ResponseMap harris_response(const Image& img, const DetectorParams& params);

// Thresholded, non-maximum suppressed Harris corners at least `margin` pixels
// from every border, strongest first.
std::vector<Keypoint> detect(const Image& img, const DetectorParams& params,
                             int margin);

}  // namespace mreak

#endif  // MREAK_DETECTOR_H_

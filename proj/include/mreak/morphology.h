#ifndef MREAK_MORPHOLOGY_H_
#define MREAK_MORPHOLOGY_H_

#include "mreak/raster.h"

namespace mreak {

// Flat rectangular structuring element anchored at its center.
struct StructuringElement {
  int width = 3;
  int height = 3;

  StructuringElement() = default;
  StructuringElement(int w, int h);

  static StructuringElement square(int size) { return {size, size}; }
};

// Windowed min / max with edge-replicated borders. Multi-channel images are
// filtered channel by channel.
Image erode(const Image& img, const StructuringElement& se);
Image dilate(const Image& img, const StructuringElement& se);

// Erosion followed by dilation.
Image open(const Image& img, const StructuringElement& se);
// Dilation followed by erosion.
Image close(const Image& img, const StructuringElement& se);

}  // namespace mreak

#endif  // MREAK_MORPHOLOGY_H_

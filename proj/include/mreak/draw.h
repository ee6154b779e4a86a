#ifndef MREAK_DRAW_H_
#define MREAK_DRAW_H_

#include <span>

#include "mreak/matcher.h"
#include "mreak/raster.h"

namespace mreak {

// RGB canvas with `a` on the left and `b` on the right (grayscale inputs are
// replicated across channels, unused area is black). Each match is drawn as a
// line between its endpoints, b's endpoint shifted right by a.width(), with a
// 3x3 marker at both ends; the color encodes the match branch.
Image draw_matches(const Image& a, const Image& b,
                   std::span<const Match> matches);

}  // namespace mreak

#endif  // MREAK_DRAW_H_

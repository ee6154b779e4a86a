#ifndef MREAK_RETINA_H_
#define MREAK_RETINA_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mreak/detector.h"
#include "mreak/raster.h"

namespace mreak {

enum class PatternVariant { kBase, kOpening, kClosing };

std::string_view variant_name(PatternVariant v);
PatternVariant parse_variant(std::string_view name);

// Position and smoothing radius of one sampling point, in pattern units
// (the pattern fits in the unit disc).
struct ReceptiveField {
  double dx = 0.0;
  double dy = 0.0;
  double sigma = 0.0;
  int ring = -1;  // -1 for the center field
};

struct PatternParams {
  // Strength of the radial modulation applied by the opening/closing
  // variants; the innermost ring changes by roughly this fraction.
  double kappa = 0.4;
  double scale = 22.5;  // pixels per pattern unit
  int rotation_bins = 256;

  void validate() const;
};

// A field placed in pixel units for one rotation bin.
struct SampleOffset {
  double x = 0.0;
  double y = 0.0;
  int half = 1;  // half-side of the averaging box
};

class SamplingPattern {
 public:
  static constexpr int kNumRings = 7;
  static constexpr int kPointsPerRing = 6;
  static constexpr int kNumFields = 1 + kNumRings * kPointsPerRing;
  static constexpr double kInnerRadius = 0.08;
  static constexpr double kOuterRadius = 0.75;

  SamplingPattern(PatternVariant variant, const PatternParams& params);

  PatternVariant variant() const { return variant_; }
  const PatternParams& params() const { return params_; }
  int rotation_bins() const { return params_.rotation_bins; }
  double scale() const { return params_.scale; }

  // Unrotated geometry; field 0 is the center, ring i occupies fields
  // 1 + 6i .. 6 + 6i from the innermost ring outward.
  std::span<const ReceptiveField> fields() const { return fields_; }
  const ReceptiveField& field(int index) const { return fields_[index]; }
  ReceptiveField rotated_field(int bin, int index) const;

  double ring_radius(int ring) const { return ring_radii_[ring]; }

  std::span<const SampleOffset> offsets(int bin) const {
    return std::span<const SampleOffset>(offsets_).subspan(
        static_cast<std::size_t>(bin) * kNumFields, kNumFields);
  }

  // Distance from the keypoint to the image border needed for every field of
  // every rotation to sample in-bounds pixels.
  int margin() const { return margin_; }

  // Nearest rotation bin, wrapped into [0, rotation_bins).
  int bin_for_angle(double angle) const;

 private:
  PatternVariant variant_;
  PatternParams params_;
  std::array<double, kNumRings> ring_radii_{};
  std::vector<ReceptiveField> fields_;
  std::vector<SampleOffset> offsets_;
  int margin_ = 0;
};

// Radius/sigma scale factor applied to a ring at base radius r.
double ring_modulation(PatternVariant variant, double radius,
                       double outer_radius, double kappa);

SamplingPattern build_pattern(PatternVariant variant,
                              const PatternParams& params);

// Mean over [x0, x1) x [y0, y1), rounded to the nearest 1/256.
double box_mean(const IntegralImage& ii, int x0, int y0, int x1, int y1);

// Box-smoothed intensity of a field around a keypoint in the given rotation
// bin. Throws std::out_of_range when the box leaves the image.
double field_intensity(const IntegralImage& ii, const Keypoint& kp,
                       const SamplingPattern& pattern, int field, int bin);

// Tab-separated geometry dump: variant, ring, point, dx, dy, sigma.
std::string pattern_table(const SamplingPattern& pattern);

}  // namespace mreak

#endif  // MREAK_RETINA_H_

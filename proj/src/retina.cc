#include "mreak/retina.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace mreak {

std::string_view variant_name(PatternVariant v) {
  switch (v) {
    case PatternVariant::kBase:
      return "base";
    case PatternVariant::kOpening:
      return "open";
    case PatternVariant::kClosing:
      return "close";
  }
  return "base";
}

PatternVariant parse_variant(std::string_view name) {
  if (name == "base") return PatternVariant::kBase;
  if (name == "open") return PatternVariant::kOpening;
  if (name == "close") return PatternVariant::kClosing;
  throw std::invalid_argument("unknown pattern variant: " + std::string(name));
}

void PatternParams::validate() const {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("kappa must lie in (0, 1)");
  }
  if (!(scale > 0.0) || rotation_bins < 1) {
    throw std::invalid_argument("invalid pattern scale or rotation bins");
  }
}

double ring_modulation(PatternVariant variant, double radius,
                       double outer_radius, double kappa) {
  const double shift = kappa * (1.0 - radius / outer_radius);
  switch (variant) {
    case PatternVariant::kBase:
      return 1.0;
    case PatternVariant::kOpening:
      return 1.0 - shift;
    case PatternVariant::kClosing:
      return 1.0 + shift;
  }
  return 1.0;
}

SamplingPattern::SamplingPattern(PatternVariant variant,
                                 const PatternParams& params)
    : variant_(variant), params_(params) {
  params_.validate();
  constexpr double kPi = std::numbers::pi;

  // Geometric progression from the innermost to the outermost ring.
  const double growth = std::pow(kOuterRadius / kInnerRadius,
                                 1.0 / (kNumRings - 1));
  std::array<double, kNumRings> base{};
  std::array<double, kNumRings> base_sigma{};
  for (int i = 0; i < kNumRings; ++i) {
    base[i] = i == kNumRings - 1 ? kOuterRadius
                                 : kInnerRadius * std::pow(growth, i);
  }
  for (int i = 0; i < kNumRings; ++i) {
    base_sigma[i] = 0.5 * (base[i] - (i == 0 ? 0.0 : base[i - 1]));
  }

  fields_.reserve(kNumFields);
  const double center_scale =
      ring_modulation(variant, 0.0, kOuterRadius, params_.kappa);
  fields_.push_back({0.0, 0.0, 0.5 * kInnerRadius * center_scale, -1});
  for (int i = 0; i < kNumRings; ++i) {
    const double s = ring_modulation(variant, base[i], kOuterRadius,
                                     params_.kappa);
    ring_radii_[i] = base[i] * s;
    const double offset = (i % 2) * kPi / kPointsPerRing;
    for (int j = 0; j < kPointsPerRing; ++j) {
      const double alpha = 2.0 * kPi * j / kPointsPerRing + offset;
      fields_.push_back({ring_radii_[i] * std::cos(alpha),
                         ring_radii_[i] * std::sin(alpha), base_sigma[i] * s,
                         i});
    }
  }

  const int bins = params_.rotation_bins;
  offsets_.reserve(static_cast<std::size_t>(bins) * kNumFields);
  for (int k = 0; k < bins; ++k) {
    for (int f = 0; f < kNumFields; ++f) {
      const ReceptiveField r = rotated_field(k, f);
      const int half =
          std::max(1, static_cast<int>(std::lround(r.sigma * params_.scale)));
      offsets_.push_back({r.dx * params_.scale, r.dy * params_.scale, half});
    }
  }

  // Rounding the field center to a pixel moves it by at most half a pixel.
  for (const ReceptiveField& f : fields_) {
    const double reach = std::hypot(f.dx, f.dy) * params_.scale;
    const int half =
        std::max(1, static_cast<int>(std::lround(f.sigma * params_.scale)));
    margin_ = std::max(margin_, static_cast<int>(std::ceil(reach)) + 1 + half);
  }
}

ReceptiveField SamplingPattern::rotated_field(int bin, int index) const {
  const ReceptiveField& f = fields_[index];
  const double theta = 2.0 * std::numbers::pi * bin / params_.rotation_bins;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {f.dx * c - f.dy * s, f.dx * s + f.dy * c, f.sigma, f.ring};
}

int SamplingPattern::bin_for_angle(double angle) const {
  const int bins = params_.rotation_bins;
  const double step = 2.0 * std::numbers::pi / bins;
  const long k = std::lround(angle / step) % bins;
  return static_cast<int>(k < 0 ? k + bins : k);
}

SamplingPattern build_pattern(PatternVariant variant,
                              const PatternParams& params) {
  return SamplingPattern(variant, params);
}

double box_mean(const IntegralImage& ii, int x0, int y0, int x1, int y1) {
  if (x0 < 0 || y0 < 0 || x1 > ii.width() || y1 > ii.height() || x0 >= x1 ||
      y0 >= y1) {
    throw std::out_of_range("sampling box outside the image");
  }
  const std::int64_t sum = ii.box_sum(x0, y0, x1, y1);
  const std::int64_t count = static_cast<std::int64_t>(x1 - x0) * (y1 - y0);
  // round(256 * sum / count) in exact integer arithmetic
  const std::int64_t q = (512 * sum + count) / (2 * count);
  return static_cast<double>(q) / 256.0;
}

double field_intensity(const IntegralImage& ii, const Keypoint& kp,
                       const SamplingPattern& pattern, int field, int bin) {
  const SampleOffset& o = pattern.offsets(bin)[field];
  const int cx = static_cast<int>(std::floor(kp.x + o.x + 0.5));
  const int cy = static_cast<int>(std::floor(kp.y + o.y + 0.5));
  return box_mean(ii, cx - o.half, cy - o.half, cx + o.half + 1,
                  cy + o.half + 1);
}

std::string pattern_table(const SamplingPattern& pattern) {
  std::string out;
  char line[160];
  const auto fields = pattern.fields();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const ReceptiveField& f = fields[i];
    const int point =
        f.ring < 0 ? 0 : static_cast<int>(i - 1) % SamplingPattern::kPointsPerRing;
    std::snprintf(line, sizeof(line), "%s\t%d\t%d\t%.6f\t%.6f\t%.6f\n",
                  std::string(variant_name(pattern.variant())).c_str(), f.ring,
                  point, f.dx, f.dy, f.sigma);
    out += line;
  }
  return out;
}

}  // namespace mreak

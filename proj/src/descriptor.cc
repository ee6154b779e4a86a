#include "mreak/descriptor.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace mreak {

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::kBaseline:
      return "baseline";
    case Branch::kOpen:
      return "open";
    case Branch::kClose:
      return "close";
    case Branch::kMerged:
      return "merged";
  }
  return "baseline";
}

Branch parse_branch(std::string_view name) {
  if (name == "baseline") return Branch::kBaseline;
  if (name == "open") return Branch::kOpen;
  if (name == "close") return Branch::kClose;
  if (name == "merged") return Branch::kMerged;
  throw std::invalid_argument("unknown branch: " + std::string(name));
}

Branch branch_for(PatternVariant v) {
  switch (v) {
    case PatternVariant::kBase:
      return Branch::kBaseline;
    case PatternVariant::kOpening:
      return Branch::kOpen;
    case PatternVariant::kClosing:
      return Branch::kClose;
  }
  return Branch::kBaseline;
}

std::size_t BitString::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> bytes(byte_size());
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    bytes[b] = static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8)));
  }
  return bytes;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes,
                                std::size_t bit_count) {
  BitString out(bit_count);
  if (bytes.size() != out.byte_size()) {
    throw std::invalid_argument("byte count does not match bit count");
  }
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    out.words_[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
  }
  // Padding bits past bit_count stay clear so equality and popcount hold.
  if (bit_count % 64 != 0 && !out.words_.empty()) {
    out.words_.back() &= (std::uint64_t{1} << (bit_count % 64)) - 1;
  }
  return out;
}

std::span<const IndexPair> all_pairs() {
  static const std::vector<IndexPair> pairs = [] {
    std::vector<IndexPair> v;
    v.reserve(kAllPairCount);
    for (int i = 0; i < SamplingPattern::kNumFields; ++i) {
      for (int j = i + 1; j < SamplingPattern::kNumFields; ++j) {
        v.push_back({static_cast<std::uint8_t>(i),
                     static_cast<std::uint8_t>(j)});
      }
    }
    return v;
  }();
  return pairs;
}

void PairSet::validate() const {
  if (pairs.size() > static_cast<std::size_t>(kAllPairCount)) {
    throw std::invalid_argument("pair set larger than 903");
  }
  std::set<std::pair<int, int>> seen;
  for (const IndexPair& p : pairs) {
    if (p.first >= SamplingPattern::kNumFields ||
        p.second >= SamplingPattern::kNumFields || p.first == p.second) {
      throw std::invalid_argument("invalid field pair");
    }
    const std::pair<int, int> key{std::min(p.first, p.second),
                                  std::max(p.first, p.second)};
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate field pair");
    }
  }
}

namespace {

double field_radius(const SamplingPattern& pattern, int index) {
  const int ring = pattern.field(index).ring;
  return ring < 0 ? 0.0 : pattern.ring_radius(ring);
}

}  // namespace

OrientationPairSet make_orientation_pairs(const SamplingPattern& pattern) {
  struct Candidate {
    double length;
    IndexPair pair;
  };
  std::vector<Candidate> candidates;
  const int n = SamplingPattern::kNumFields;
  for (int i = 0; i < n; ++i) {
    const ReceptiveField& a = pattern.field(i);
    for (int j = i + 1; j < n; ++j) {
      const ReceptiveField& b = pattern.field(j);
      const IndexPair pair{static_cast<std::uint8_t>(i),
                           static_cast<std::uint8_t>(j)};
      if (a.ring < 0) {
        candidates.push_back({field_radius(pattern, j), pair});
        continue;
      }
      const double na = std::hypot(a.dx, a.dy);
      const double nb = std::hypot(b.dx, b.dy);
      if (std::abs(na - nb) >= 1e-9) continue;
      // Angle between a and -b.
      const double cross = a.dx * -b.dy - a.dy * -b.dx;
      const double dot = a.dx * -b.dx + a.dy * -b.dy;
      if (std::abs(std::atan2(cross, dot)) < 1e-6) {
        candidates.push_back({2.0 * field_radius(pattern, i), pair});
      }
    }
  }
  if (candidates.size() < static_cast<std::size_t>(kOrientationPairCount)) {
    throw std::invalid_argument("pattern yields fewer than 45 orientation pairs");
  }
  // Candidates were generated in lexicographic order, so a stable sort on
  // length alone realizes the (i, j) tie-break.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) {
                     return x.length > y.length;
                   });

  OrientationPairSet out;
  for (int k = 0; k < kOrientationPairCount; ++k) {
    const IndexPair p = candidates[k].pair;
    const ReceptiveField& a = pattern.field(p.first);
    const ReceptiveField& b = pattern.field(p.second);
    const double dx = a.dx - b.dx;
    const double dy = a.dy - b.dy;
    const double norm = std::hypot(dx, dy);
    out.pairs.push_back(p);
    out.directions.push_back({dx / norm, dy / norm});
  }
  return out;
}

namespace {

std::array<double, SamplingPattern::kNumFields> sample_fields(
    const IntegralImage& ii, const Keypoint& kp,
    const SamplingPattern& pattern, int bin) {
  std::array<double, SamplingPattern::kNumFields> values{};
  for (int f = 0; f < SamplingPattern::kNumFields; ++f) {
    values[f] = field_intensity(ii, kp, pattern, f, bin);
  }
  return values;
}

std::array<double, 2> orientation_from_samples(
    std::span<const double> unrotated, const OrientationPairSet& opairs) {
  double ox = 0.0;
  double oy = 0.0;
  for (std::size_t k = 0; k < opairs.pairs.size(); ++k) {
    const IndexPair p = opairs.pairs[k];
    const double diff = unrotated[p.first] - unrotated[p.second];
    ox += diff * opairs.directions[k][0];
    oy += diff * opairs.directions[k][1];
  }
  const double m = static_cast<double>(opairs.pairs.size());
  return {ox / m, oy / m};
}

double angle_of(const std::array<double, 2>& o) {
  if (std::hypot(o[0], o[1]) < 1e-9) return 0.0;
  return std::atan2(o[1], o[0]);
}

// Orientation, then the samples of the bin nearest to it.
std::array<double, SamplingPattern::kNumFields> oriented_samples(
    const IntegralImage& ii, Keypoint& kp, const SamplingPattern& pattern,
    const OrientationPairSet& opairs) {
  const auto unrotated = sample_fields(ii, kp, pattern, 0);
  const double angle = angle_of(orientation_from_samples(unrotated, opairs));
  kp.angle = angle;
  const int bin = pattern.bin_for_angle(angle);
  return bin == 0 ? unrotated : sample_fields(ii, kp, pattern, bin);
}

}  // namespace

std::array<double, 2> orientation_vector(const IntegralImage& ii,
                                         const Keypoint& kp,
                                         const SamplingPattern& pattern,
                                         const OrientationPairSet& opairs) {
  const auto samples = sample_fields(ii, kp, pattern, 0);
  return orientation_from_samples(samples, opairs);
}

double orientation(const IntegralImage& ii, const Keypoint& kp,
                   const SamplingPattern& pattern,
                   const OrientationPairSet& opairs) {
  return angle_of(orientation_vector(ii, kp, pattern, opairs));
}

Descriptor describe(const IntegralImage& ii, const Keypoint& kp,
                    const SamplingPattern& pattern, const PairSet& pairs,
                    const OrientationPairSet& opairs) {
  Descriptor d{BitString(pairs.size()), kp, branch_for(pattern.variant())};
  const auto values = oriented_samples(ii, d.keypoint, pattern, opairs);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const IndexPair p = pairs.pairs[a];
    if (values[p.first] > values[p.second]) d.bits.set(a);
  }
  return d;
}

BitString describe_all_pairs(const IntegralImage& ii, const Keypoint& kp,
                             const SamplingPattern& pattern,
                             const OrientationPairSet& opairs) {
  Keypoint oriented = kp;
  const auto values = oriented_samples(ii, oriented, pattern, opairs);
  const auto pairs = all_pairs();
  BitString bits(pairs.size());
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    if (values[pairs[a].first] > values[pairs[a].second]) bits.set(a);
  }
  return bits;
}

PairSet default_pairs(const SamplingPattern& pattern, int n) {
  if (n < 0 || n > kAllPairCount) {
    throw std::invalid_argument("pair count must lie in [0, 903]");
  }
  std::vector<IndexPair> pairs(all_pairs().begin(), all_pairs().end());
  auto key = [&](const IndexPair& p) {
    return field_radius(pattern, p.first) + field_radius(pattern, p.second);
  };
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const IndexPair& a, const IndexPair& b) {
                     return key(a) > key(b);
                   });
  pairs.resize(n);
  return PairSet{std::move(pairs)};
}

}  // namespace mreak

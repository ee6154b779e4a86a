#ifndef MREAK_DESCRIPTOR_H_
#define MREAK_DESCRIPTOR_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mreak/detector.h"
#include "mreak/raster.h"
#include "mreak/retina.h"

namespace mreak {

// Which pipeline produced a descriptor or match. The numeric codes of the
// first three are part of the descriptor dump format.
enum class Branch : std::uint8_t {
  kBaseline = 0,
  kOpen = 1,
  kClose = 2,
  kMerged = 3,
};

std::string_view branch_name(Branch b);
Branch parse_branch(std::string_view name);
Branch branch_for(PatternVariant v);

// Fixed-length bit string; bit a lives in word a / 64 at position a % 64,
// which serializes to byte a / 8, bit a % 8 (LSB first).
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t bit_count)
      : bit_count_(bit_count), words_((bit_count + 63) / 64, 0) {}

  std::size_t size() const { return bit_count_; }
  std::size_t byte_size() const { return (bit_count_ + 7) / 8; }

  bool test(std::size_t a) const { return (words_[a >> 6] >> (a & 63)) & 1u; }
  void set(std::size_t a) { words_[a >> 6] |= std::uint64_t{1} << (a & 63); }

  std::size_t count() const;
  std::span<const std::uint64_t> words() const { return words_; }

  std::vector<std::uint8_t> to_bytes() const;
  static BitString from_bytes(std::span<const std::uint8_t> bytes,
                              std::size_t bit_count);

  bool operator==(const BitString&) const = default;

 private:
  std::size_t bit_count_ = 0;
  std::vector<std::uint64_t> words_;
};

struct IndexPair {
  std::uint8_t first = 0;
  std::uint8_t second = 0;

  bool operator==(const IndexPair&) const = default;
};

// Number of unordered field pairs of a 43-field pattern.
inline constexpr int kAllPairCount =
    SamplingPattern::kNumFields * (SamplingPattern::kNumFields - 1) / 2;
inline constexpr int kOrientationPairCount = 45;
inline constexpr int kDefaultDescriptorBits = 512;

// All 903 pairs (i, j), i < j, in lexicographic order. Column c of a pair
// training matrix corresponds to entry c of this list.
std::span<const IndexPair> all_pairs();

struct PairSet {
  std::vector<IndexPair> pairs;

  std::size_t size() const { return pairs.size(); }
  // Throws std::invalid_argument on out-of-range indices, self pairs or
  // repeated unordered pairs.
  void validate() const;
  bool operator==(const PairSet&) const = default;
};

struct OrientationPairSet {
  std::vector<IndexPair> pairs;
  // Unit vector from field `second` to field `first` of each pair.
  std::vector<std::array<double, 2>> directions;
};

struct Descriptor {
  BitString bits;
  Keypoint keypoint;
  Branch branch = Branch::kBaseline;
};

// Center-symmetric pairs (diametric points of a ring, or the center with any
// other field), longest first, first 45 kept.
OrientationPairSet make_orientation_pairs(const SamplingPattern& pattern);

// Intensity-weighted sum of pair directions, averaged over the pairs; in
// pixel-frame coordinates using the unrotated pattern.
std::array<double, 2> orientation_vector(const IntegralImage& ii,
                                         const Keypoint& kp,
                                         const SamplingPattern& pattern,
                                         const OrientationPairSet& opairs);

// atan2 of orientation_vector, or 0 when its norm is below 1e-9.
double orientation(const IntegralImage& ii, const Keypoint& kp,
                   const SamplingPattern& pattern,
                   const OrientationPairSet& opairs);

// Bit a is set iff field pairs[a].first is strictly brighter than
// pairs[a].second, both sampled in the rotation bin nearest the keypoint's
// orientation.
Descriptor describe(const IntegralImage& ii, const Keypoint& kp,
                    const SamplingPattern& pattern, const PairSet& pairs,
                    const OrientationPairSet& opairs);

// All 903 comparison bits for one keypoint, in all_pairs() order.
BitString describe_all_pairs(const IntegralImage& ii, const Keypoint& kp,
                             const SamplingPattern& pattern,
                             const OrientationPairSet& opairs);

// Coarse to fine: pairs ordered by descending sum of field radii, ties in
// lexicographic order; first n kept.
PairSet default_pairs(const SamplingPattern& pattern,
                      int n = kDefaultDescriptorBits);

}  // namespace mreak

#endif  // MREAK_DESCRIPTOR_H_

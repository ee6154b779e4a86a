#include "mreak/io.h"

#include <gtest/gtest.h>

#include <cstring>
#include <random>

namespace mreak {
namespace {

DescriptorFile sample_file(std::size_t bits, int count) {
  std::mt19937 rng(8);
  std::bernoulli_distribution coin(0.5);
  DescriptorFile f;
  f.branch = Branch::kClose;
  f.bit_count = static_cast<std::uint32_t>(bits);
  for (int i = 0; i < count; ++i) {
    Descriptor d{BitString(bits), Keypoint{1.5 * i, 2.0 + i, 10.0 * i, 0.25},
                 Branch::kClose};
    for (std::size_t a = 0; a < bits; ++a) {
      if (coin(rng)) d.bits.set(a);
    }
    f.descriptors.push_back(d);
  }
  return f;
}

TEST(DescriptorFile, ByteLayout) {
  const DescriptorFile f = sample_file(12, 1);
  const auto bytes = encode_descriptors(f);
  ASSERT_EQ(bytes.size(), 4u + 4 + 4 + 1 + 16 + 2);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "MRK1");
  EXPECT_EQ(bytes[4], 1);   // count, little endian
  EXPECT_EQ(bytes[8], 12);  // bit count
  EXPECT_EQ(bytes[12], 2);  // close branch
  float angle = 0;
  std::memcpy(&angle, bytes.data() + 13 + 8, 4);
  EXPECT_EQ(angle, 0.25f);
  const auto payload = f.descriptors[0].bits.to_bytes();
  EXPECT_EQ(bytes[29], payload[0]);
  EXPECT_EQ(bytes[30], payload[1]);
}

TEST(DescriptorFile, RoundTrip) {
  for (std::size_t bits : {1u, 64u, 512u, 903u}) {
    const DescriptorFile f = sample_file(bits, 5);
    const DescriptorFile back = decode_descriptors(encode_descriptors(f));
    EXPECT_EQ(back.branch, f.branch);
    EXPECT_EQ(back.bit_count, f.bit_count);
    ASSERT_EQ(back.descriptors.size(), 5u);
    for (int i = 0; i < 5; ++i) {
      EXPECT_EQ(back.descriptors[i].bits, f.descriptors[i].bits);
      EXPECT_EQ(back.descriptors[i].keypoint, f.descriptors[i].keypoint);
      EXPECT_EQ(back.descriptors[i].branch, Branch::kClose);
    }
    EXPECT_EQ(encode_descriptors(back), encode_descriptors(f));
  }
}

TEST(DescriptorFile, RejectsCorruptInput) {
  auto bytes = encode_descriptors(sample_file(64, 3));
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(decode_descriptors(bad), FormatError);
  EXPECT_THROW(decode_descriptors(std::span(bytes).first(bytes.size() - 1)),
               FormatError);
  auto extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(decode_descriptors(extra), FormatError);
  bad = bytes;
  bad[12] = 9;
  EXPECT_THROW(decode_descriptors(bad), FormatError);
}

TEST(PairFile, RoundTripAndValidation) {
  const PairSet pairs{{{0, 1}, {42, 7}, {3, 30}}};
  const auto bytes = encode_pairs(pairs);
  EXPECT_EQ(bytes, (std::vector<std::uint8_t>{'M', 'R', 'P', '1', 3, 0, 0, 0,
                                              0, 1, 42, 7, 3, 30}));
  EXPECT_EQ(decode_pairs(bytes), pairs);
  auto dup = encode_pairs(PairSet{{{0, 1}, {2, 3}}});
  dup[10] = 1;
  dup[11] = 0;
  EXPECT_THROW(decode_pairs(dup), FormatError);
  EXPECT_THROW(decode_pairs(std::span(bytes).first(7)), FormatError);
}

}  // namespace
}  // namespace mreak

#ifndef MREAK_IO_H_
#define MREAK_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mreak/descriptor.h"

namespace mreak {

// "MRK1" dump: u32 count, u32 bit_count, u8 branch code, then per descriptor
// f32 x, y, angle, response and ceil(bit_count / 8) bit bytes. Little endian.
struct DescriptorFile {
  Branch branch = Branch::kBaseline;
  std::uint32_t bit_count = 0;
  std::vector<Descriptor> descriptors;
};

std::vector<std::uint8_t> encode_descriptors(const DescriptorFile& file);
DescriptorFile decode_descriptors(std::span<const std::uint8_t> bytes);

// "MRP1" file: u32 n, then n x (u8 i, u8 j).
std::vector<std::uint8_t> encode_pairs(const PairSet& pairs);
PairSet decode_pairs(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace mreak

#endif  // MREAK_IO_H_

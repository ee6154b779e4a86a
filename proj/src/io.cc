#include "mreak/io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace mreak {

namespace {

constexpr char kDescriptorMagic[4] = {'M', 'R', 'K', '1'};
constexpr char kPairMagic[4] = {'M', 'R', 'P', '1'};

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> bytes(std::size_t n) {
    if (in_.size() - pos_ < n) throw FormatError("truncated file");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return bytes(1)[0]; }
  std::uint32_t u32() {
    const auto b = bytes(4);
    return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 |
           std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  void expect_magic(const char (&magic)[4]) {
    const auto b = bytes(4);
    if (std::memcmp(b.data(), magic, 4) != 0) {
      throw FormatError("bad magic, expected " + std::string(magic, 4));
    }
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_descriptors(const DescriptorFile& file) {
  if (file.branch == Branch::kMerged) {
    throw std::invalid_argument("merged is not a descriptor branch");
  }
  Writer w;
  w.bytes(kDescriptorMagic, 4);
  w.u32(static_cast<std::uint32_t>(file.descriptors.size()));
  w.u32(file.bit_count);
  w.u8(static_cast<std::uint8_t>(file.branch));
  for (const Descriptor& d : file.descriptors) {
    if (d.bits.size() != file.bit_count) {
      throw std::invalid_argument("descriptor length differs from bit_count");
    }
    w.f32(static_cast<float>(d.keypoint.x));
    w.f32(static_cast<float>(d.keypoint.y));
    w.f32(static_cast<float>(d.keypoint.angle.value_or(0.0)));
    w.f32(static_cast<float>(d.keypoint.response));
    const auto bits = d.bits.to_bytes();
    w.bytes(bits.data(), bits.size());
  }
  return w.take();
}

DescriptorFile decode_descriptors(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.expect_magic(kDescriptorMagic);
  const std::uint32_t count = r.u32();
  DescriptorFile file;
  file.bit_count = r.u32();
  const std::uint8_t code = r.u8();
  if (code > 2) throw FormatError("unknown branch code");
  file.branch = static_cast<Branch>(code);
  const std::size_t stride = 16 + (file.bit_count + 7) / 8;
  if ((bytes.size() - 13) / stride < count) throw FormatError("truncated file");
  file.descriptors.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Descriptor d;
    d.branch = file.branch;
    d.keypoint.x = r.f32();
    d.keypoint.y = r.f32();
    d.keypoint.angle = r.f32();
    d.keypoint.response = r.f32();
    d.bits = BitString::from_bytes(r.bytes((file.bit_count + 7) / 8),
                                   file.bit_count);
    file.descriptors.push_back(std::move(d));
  }
  if (!r.done()) throw FormatError("trailing bytes after descriptors");
  return file;
}

std::vector<std::uint8_t> encode_pairs(const PairSet& pairs) {
  pairs.validate();
  Writer w;
  w.bytes(kPairMagic, 4);
  w.u32(static_cast<std::uint32_t>(pairs.size()));
  for (const IndexPair& p : pairs.pairs) {
    w.u8(p.first);
    w.u8(p.second);
  }
  return w.take();
}

PairSet decode_pairs(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.expect_magic(kPairMagic);
  const std::uint32_t n = r.u32();
  if (n > static_cast<std::uint32_t>(kAllPairCount)) {
    throw FormatError("pair count exceeds 903");
  }
  PairSet out;
  for (std::uint32_t k = 0; k < n; ++k) {
    const std::uint8_t i = r.u8();
    const std::uint8_t j = r.u8();
    out.pairs.push_back({i, j});
  }
  if (!r.done()) throw FormatError("trailing bytes after pairs");
  try {
    out.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace mreak

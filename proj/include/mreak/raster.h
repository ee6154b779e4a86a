#ifndef MREAK_RASTER_H_
#define MREAK_RASTER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mreak {

// Raised for malformed or truncated file payloads (PNM, descriptor dumps,
// pair files, match lists).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 8-bit raster with 1 or 3 interleaved channels, stored row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);
  Image(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }

  std::uint8_t at(int x, int y, int c = 0) const {
    return data_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }

  // Edge-replicated read: coordinates are clamped into the image.
  std::uint8_t clamped(int x, int y, int c = 0) const;

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  // Single channel c as its own 1-channel image.
  Image channel(int c) const;
  void set_channel(int c, const Image& plane);

  bool operator==(const Image&) const = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<std::uint8_t> data_;
};

// Binary PGM (P5) / PPM (P6), maxval 255 only.
Image load_pnm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> save_pnm(const Image& img);

Image read_pnm_file(const std::string& path);
void write_pnm_file(const std::string& path, const Image& img);

// BT.601 luma, rounded and clamped. Single-channel input is returned as is.
Image to_gray(const Image& img);

// (width+1) x (height+1) table of 64-bit prefix sums; cell(i, j) is the sum
// over columns [0, i) and rows [0, j).
class IntegralImage {
 public:
  IntegralImage() = default;
  explicit IntegralImage(const Image& img);

  int width() const { return width_; }
  int height() const { return height_; }

  std::int64_t cell(int i, int j) const {
    return sums_[static_cast<std::size_t>(j) * (width_ + 1) + i];
  }

  // Sum over the half-open box [x0, x1) x [y0, y1).
  std::int64_t box_sum(int x0, int y0, int x1, int y1) const {
    return cell(x1, y1) - cell(x0, y1) - cell(x1, y0) + cell(x0, y0);
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int64_t> sums_;
};

IntegralImage integral(const Image& img);

}  // namespace mreak

#endif  // MREAK_RASTER_H_

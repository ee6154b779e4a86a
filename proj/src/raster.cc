#include "mreak/raster.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>

namespace mreak {

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("image dimensions must be non-negative");
  }
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("image must have 1 or 3 channels");
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels,
             std::vector<std::uint8_t> data)
    : Image(width, height, channels) {
  if (data.size() != data_.size()) {
    throw std::invalid_argument("image data length does not match size");
  }
  data_ = std::move(data);
}

std::uint8_t Image::clamped(int x, int y, int c) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return at(x, y, c);
}

Image Image::channel(int c) const {
  Image plane(width_, height_, 1);
  for (std::size_t p = 0; p < plane.data_.size(); ++p) {
    plane.data_[p] = data_[p * channels_ + c];
  }
  return plane;
}

void Image::set_channel(int c, const Image& plane) {
  if (plane.width_ != width_ || plane.height_ != height_ ||
      plane.channels_ != 1) {
    throw std::invalid_argument("channel plane has wrong shape");
  }
  for (std::size_t p = 0; p < plane.data_.size(); ++p) {
    data_[p * channels_ + c] = plane.data_[p];
  }
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number() {
    skip_space_and_comments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1L << 30)) throw FormatError("PNM header value too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw FormatError("malformed PNM header");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("malformed PNM header");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image load_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '5' && bytes[1] != '6')) {
    throw FormatError("not a binary PGM/PPM file");
  }
  const int channels = bytes[1] == '5' ? 1 : 3;
  HeaderReader reader(bytes.subspan(2));
  const long width = reader.number();
  const long height = reader.number();
  const long maxval = reader.number();
  if (maxval != 255) {
    throw FormatError("unsupported PNM maxval " + std::to_string(maxval));
  }
  reader.single_space();
  const std::size_t offset = 2 + reader.pos();
  const std::size_t expected =
      static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - offset < expected) {
    throw FormatError("truncated PNM payload");
  }
  std::vector<std::uint8_t> data(bytes.begin() + offset,
                                 bytes.begin() + offset + expected);
  return Image(static_cast<int>(width), static_cast<int>(height), channels,
               std::move(data));
}

std::vector<std::uint8_t> save_pnm(const Image& img) {
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

Image read_pnm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load_pnm(bytes);
}

void write_pnm_file(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const auto bytes = save_pnm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

Image to_gray(const Image& img) {
  if (img.channels() == 1) return img;
  Image gray(img.width(), img.height(), 1);
  const auto src = img.data();
  auto dst = gray.data();
  for (std::size_t p = 0; p < dst.size(); ++p) {
    const double luma = 0.299 * src[3 * p] + 0.587 * src[3 * p + 1] +
                        0.114 * src[3 * p + 2];
    dst[p] = static_cast<std::uint8_t>(
        std::clamp(std::lround(luma), 0L, 255L));
  }
  return gray;
}

IntegralImage::IntegralImage(const Image& img)
    : width_(img.width()), height_(img.height()) {
  if (img.channels() != 1) {
    throw std::invalid_argument("integral image needs a single channel");
  }
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  sums_.assign(stride * (height_ + 1), 0);
  for (int y = 0; y < height_; ++y) {
    std::int64_t row = 0;
    for (int x = 0; x < width_; ++x) {
      row += img.at(x, y);
      sums_[(y + 1) * stride + x + 1] = sums_[y * stride + x + 1] + row;
    }
  }
}

IntegralImage integral(const Image& img) { return IntegralImage(img); }

}  // namespace mreak

#include "turbsim/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace turbsim {

namespace {

void check_dims(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("image must have 1 or 3 channels, got " +
                                std::to_string(channels));
  }
}

}  // namespace

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw std::invalid_argument("image data length " +
                                std::to_string(data_.size()) +
                                " does not match dimensions");
  }
}

std::uint8_t to_byte(float sample) {
  const double s = std::clamp(static_cast<double>(sample), 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(s * 255.0 + 0.5));
}

Image clamped(const Image& img) {
  Image out = img;
  for (float& s : out.samples()) s = std::clamp(s, 0.0f, 1.0f);
  return out;
}

Image quantized(const Image& img) {
  Image out = img;
  for (float& s : out.samples()) s = static_cast<float>(to_byte(s)) / 255.0f;
  return out;
}

Image center_crop(const Image& img, int width, int height) {
  if (width > img.width() || height > img.height()) {
    throw std::invalid_argument("crop window larger than image");
  }
  const int x0 = (img.width() - width) / 2;
  const int y0 = (img.height() - height) / 2;
  Image out(width, height, img.channels());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
      }
    }
  }
  return out;
}

}  // namespace turbsim

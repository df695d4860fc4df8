#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace turbsim {

/// Row-major, channel-interleaved float raster. Samples are nominally in
/// [0,1]; the constructor does not clamp so that intermediate arithmetic
/// (and tests of it) can step outside the range. Anything written to disk
/// is clamped.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0f);
  Image(int width, int height, int channels, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t index(int x, int y, int c = 0) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }
  float at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }
  float& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }

  std::span<const float> samples() const { return data_; }
  std::span<float> samples() { return data_; }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

/// 8-bit code for a sample: clamp to [0,1], then round half up.
std::uint8_t to_byte(float sample);

/// Copy with every sample clamped to [0,1].
Image clamped(const Image& img);

/// Copy snapped to the 8-bit grid, exactly as a save/load round trip would
/// produce it.
Image quantized(const Image& img);

/// Copy of the central width x height window.
Image center_crop(const Image& img, int width, int height);

}  // namespace turbsim

#pragma once

#include <filesystem>
#include <stdexcept>

#include "turbsim/image.hpp"

namespace turbsim {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads an 8- or 16-bit grayscale or RGB PNG, scaling samples by the
/// format's maximum code. Palette images are expanded to RGB. Images with
/// an alpha channel are rejected.
Image load_png(const std::filesystem::path& path);

/// Writes an 8-bit PNG (gray or RGB to match the channel count). No
/// ancillary chunks are emitted, so identical images give identical bytes.
void save_png(const Image& img, const std::filesystem::path& path);

}  // namespace turbsim

#pragma once

#include <vector>

#include "turbsim/image.hpp"

namespace turbsim {

/// Truncated, renormalized 1-D Gaussian with 2*radius+1 taps.
struct Kernel1D {
  int radius = 0;
  std::vector<double> weights;

  double center() const { return weights[radius]; }
};

/// Throws std::invalid_argument for sigma <= 0 or radius < 0.
Kernel1D gaussian_kernel(double sigma, int radius);

/// Truncation radius used by every Gaussian in the library: ceil(3*sigma).
int gaussian_radius(double sigma);

/// Separable Gaussian blur (horizontal pass, then vertical) with replicate
/// padding. Channels are filtered independently. sigma == 0 returns the
/// input unchanged.
Image gaussian_blur(const Image& img, double sigma);

}  // namespace turbsim

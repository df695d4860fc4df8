#include "turbsim/blur.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace turbsim {

Kernel1D gaussian_kernel(double sigma, int radius) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_kernel: sigma must be positive, got " +
                                std::to_string(sigma));
  }
  if (radius < 0) {
    throw std::invalid_argument("gaussian_kernel: negative radius");
  }
  Kernel1D k;
  k.radius = radius;
  k.weights.resize(2 * static_cast<std::size_t>(radius) + 1);
  const double denom = 2.0 * sigma * sigma;
  double sum = 0.0;
  for (int i = 0; i <= 2 * radius; ++i) {
    const double d = i - radius;
    k.weights[i] = std::exp(-d * d / denom);
  }
  // Pairwise from the tails so the mirrored taps stay bit-identical.
  for (int i = 0; i < radius; ++i) sum += 2.0 * k.weights[i];
  sum += k.weights[radius];
  for (double& w : k.weights) w /= sum;
  return k;
}

int gaussian_radius(double sigma) {
  return static_cast<int>(std::ceil(3.0 * sigma));
}

Image gaussian_blur(const Image& img, double sigma) {
  if (sigma < 0.0 || std::isnan(sigma)) {
    throw std::invalid_argument("gaussian_blur: sigma must be >= 0");
  }
  if (sigma == 0.0) return img;

  const Kernel1D k = gaussian_kernel(sigma, gaussian_radius(sigma));
  const int w = img.width();
  const int h = img.height();
  const int ch = img.channels();
  const int r = k.radius;

  Image tmp(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int t = -r; t <= r; ++t) {
          const int xs = std::clamp(x + t, 0, w - 1);
          acc += k.weights[t + r] * img.at(xs, y, c);
        }
        tmp.at(x, y, c) = static_cast<float>(acc);
      }
    }
  }

  Image out(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int t = -r; t <= r; ++t) {
          const int ys = std::clamp(y + t, 0, h - 1);
          acc += k.weights[t + r] * tmp.at(x, ys, c);
        }
        out.at(x, y, c) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

}  // namespace turbsim

#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "turbsim/image.hpp"

namespace turbsim {

/// Returned by psnr() for identical images.
inline constexpr double kPsnrMax = std::numeric_limits<double>::infinity();

/// 10 log10(1 / MSE), peak 1.0, MSE over all samples and channels.
/// Throws std::invalid_argument on a shape mismatch.
double psnr(const Image& a, const Image& b);

/// Window and stabilizer configuration of ssim().
struct SsimOptions {
  int window = 11;
  double window_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

/// Normalized 2-D Gaussian window, window x window, row-major.
std::vector<double> ssim_window(const SsimOptions& options = {});

/// Single-scale SSIM averaged over channels and all valid (unpadded)
/// window positions. Both sides must be at least options.window pixels.
double ssim(const Image& a, const Image& b, const SsimOptions& options = {});

using FeatureExtractor = std::function<std::vector<double>(const Image&)>;

/// L2 distance between extractor(a) and extractor(b).
double feature_distance(const Image& a, const Image& b,
                        const FeatureExtractor& extractor);

}  // namespace turbsim

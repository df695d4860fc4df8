#include "turbsim/degrade.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "turbsim/blur.hpp"
#include "turbsim/rng.hpp"
#include "turbsim/warp.hpp"

namespace turbsim {

VectorField degradation_field(int width, int height,
                              const DegradationParams& params) {
  Rng rng = Rng(params.seed).split("field");
  return accumulate_field(width, height, params, rng);
}

DegradedQuad degrade(const Image& img, const DegradationParams& params) {
  params.validate();
  if (img.width() < params.patch_n || img.height() < params.patch_n) {
    throw std::invalid_argument("image " + std::to_string(img.width()) + "x" +
                                std::to_string(img.height()) +
                                " is smaller than patch size " +
                                std::to_string(params.patch_n));
  }

  const VectorField field =
      degradation_field(img.width(), img.height(), params);

  DegradedQuad quad;
  quad.params = params;
  quad.clean = img;
  quad.blurred = gaussian_blur(img, params.blur_sigma);
  quad.deformed = warp(img, field);
  quad.distorted = params.order == Order::BlurThenWarp
                       ? warp(quad.blurred, field)
                       : gaussian_blur(quad.deformed, params.blur_sigma);

  if (params.noise_sigma > 0.0) {
    Rng noise = Rng(params.seed).split("noise");
    for (float& s : quad.distorted.samples()) {
      s = static_cast<float>(s + params.noise_sigma * noise.normal());
    }
  }
  for (float& s : quad.distorted.samples()) s = std::clamp(s, 0.0f, 1.0f);
  return quad;
}

}  // namespace turbsim

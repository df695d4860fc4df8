#pragma once

#include "turbsim/field.hpp"
#include "turbsim/image.hpp"
#include "turbsim/params.hpp"

namespace turbsim {

/// One training sample: the clean image, its blur-only and
/// deformation-only versions, and the fully distorted observation.
struct DegradedQuad {
  Image clean;
  Image blurred;
  Image deformed;
  Image distorted;
  DegradationParams params;
};

/// The motion field degrade() uses for an image of this size. Drawn from
/// the "field" sub-stream of params.seed.
VectorField degradation_field(int width, int height,
                              const DegradationParams& params);

/// Applies the turbulence model to `img`.
///
///   blurred   = blur(img)
///   deformed  = warp(img, V)
///   distorted = clamp(T(img) + n)
///
/// where T is warp(blur(.)) or blur(warp(.)) per params.order, using the
/// same blur and the same field V as the other two outputs, and n is
/// i.i.d. Gaussian noise of std params.noise_sigma drawn from the "noise"
/// sub-stream. Output depends only on (img, params).
DegradedQuad degrade(const Image& img, const DegradationParams& params);

}  // namespace turbsim

#pragma once

#include "turbsim/field.hpp"
#include "turbsim/image.hpp"

namespace turbsim {

/// Backward warp: out(x, y) = img sampled bilinearly at
/// (x - dx(x, y), y - dy(x, y)), with the sampling point clamped to the
/// image rectangle. Throws std::invalid_argument on a size mismatch.
Image warp(const Image& img, const VectorField& field);

}  // namespace turbsim

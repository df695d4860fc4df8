#pragma once

#include <cstddef>
#include <vector>

#include "turbsim/image.hpp"
#include "turbsim/params.hpp"
#include "turbsim/rng.hpp"

namespace turbsim {

/// Per-pixel displacement in pixels, row-major. A zero field is the
/// identity deformation.
struct VectorField {
  int width = 0;
  int height = 0;
  std::vector<double> dx;
  std::vector<double> dy;

  static VectorField zeros(int width, int height);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// One random patch field: eta * (G * N1, G * N2), where N1 and N2 are
/// patch_n x patch_n fields of standard normal draws (N1 first, row-major)
/// and G is a Gaussian of std field_sigma applied inside the patch with
/// replicate padding.
VectorField patch_field(int patch_n, double field_sigma, double eta,
                        Rng& rng);

/// Sum of params.m_points patch fields dropped at uniformly drawn positions
/// where the whole patch fits in the frame. Patch positions and patch noise
/// come from separate labeled sub-streams of `rng`. The unit-strength sum is
/// scaled by eta once, so the result is exactly eta times the eta = 1 field.
VectorField accumulate_field(int width, int height,
                             const DegradationParams& params, Rng& rng);

/// Displacement magnitude scaled so the largest maps to 1. A zero field
/// renders black.
Image visualize_field(const VectorField& field);

}  // namespace turbsim

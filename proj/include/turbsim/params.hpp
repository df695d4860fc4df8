#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace turbsim {

/// Composition order of blur and deformation in the distorted image.
enum class Order { BlurThenWarp, WarpThenBlur };

/// Stable text names: "blur-warp" and "warp-blur".
std::string_view to_string(Order order);
std::optional<Order> parse_order(std::string_view text);

/// Everything needed to reproduce one degraded image.
struct DegradationParams {
  double eta = 0.13;          // field strength
  int patch_n = 4;            // patch side, pixels
  double field_sigma = 16.0;  // patch smoothing std, pixels
  int m_points = 1000;        // number of accumulated patches
  double blur_sigma = 1.0;    // blur std, pixels
  double noise_sigma = 0.0;   // additive noise std, sample units
  Order order = Order::BlurThenWarp;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the first violated bound.
  void validate() const;

  friend bool operator==(const DegradationParams&,
                         const DegradationParams&) = default;
};

std::string describe(const DegradationParams& params);

}  // namespace turbsim

#include "turbsim/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace turbsim {

std::string_view to_string(Order order) {
  return order == Order::BlurThenWarp ? "blur-warp" : "warp-blur";
}

std::optional<Order> parse_order(std::string_view text) {
  if (text == "blur-warp") return Order::BlurThenWarp;
  if (text == "warp-blur") return Order::WarpThenBlur;
  return std::nullopt;
}

void DegradationParams::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be >= 0");
  }
  if (patch_n < 1) throw std::invalid_argument("patch_n must be >= 1");
  if (!(field_sigma > 0.0) || !std::isfinite(field_sigma)) {
    throw std::invalid_argument("field_sigma must be > 0");
  }
  if (m_points < 0) throw std::invalid_argument("m_points must be >= 0");
  if (!(blur_sigma >= 0.0) || !std::isfinite(blur_sigma)) {
    throw std::invalid_argument("blur_sigma must be >= 0");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw std::invalid_argument("noise_sigma must be >= 0");
  }
}

std::string describe(const DegradationParams& p) {
  std::ostringstream os;
  os << "seed=" << p.seed << " eta=" << p.eta << " patch_n=" << p.patch_n
     << " field_sigma=" << p.field_sigma << " m_points=" << p.m_points
     << " blur_sigma=" << p.blur_sigma << " noise_sigma=" << p.noise_sigma
     << " order=" << to_string(p.order);
  return os.str();
}

}  // namespace turbsim

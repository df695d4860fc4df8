#include "turbsim/warp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace turbsim {

Image warp(const Image& img, const VectorField& field) {
  if (img.width() != field.width || img.height() != field.height) {
    throw std::invalid_argument("warp: field and image sizes differ");
  }
  const int w = img.width();
  const int h = img.height();
  const int ch = img.channels();
  const double max_x = w - 1;
  const double max_y = h - 1;

  Image out(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = field.index(x, y);
      const double sx = std::clamp(x - field.dx[i], 0.0, max_x);
      const double sy = std::clamp(y - field.dy[i], 0.0, max_y);
      const int x0 = static_cast<int>(sx);
      const int y0 = static_cast<int>(sy);
      const int x1 = std::min(x0 + 1, w - 1);
      const int y1 = std::min(y0 + 1, h - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int c = 0; c < ch; ++c) {
        const double top = (1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
        const double bottom = (1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
        out.at(x, y, c) = static_cast<float>((1.0 - fy) * top + fy * bottom);
      }
    }
  }
  return out;
}

}  // namespace turbsim

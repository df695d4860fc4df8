#include "turbsim/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "turbsim/blur.hpp"

namespace turbsim {

namespace {

// Replicate-padded Gaussian smoothing of an n x n patch collapses to an
// n x n matrix: row x holds the kernel weight landing on each source index
// after clamping. Smoothing is then S = A * N * A^T.
class PatchSmoother {
 public:
  PatchSmoother(int n, double sigma) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n == 1) {
      a_[0] = 1.0;
      return;
    }
    const Kernel1D k = gaussian_kernel(sigma, gaussian_radius(sigma));
    for (int x = 0; x < n; ++x) {
      for (int t = -k.radius; t <= k.radius; ++t) {
        const int j = std::clamp(x + t, 0, n - 1);
        a_[x * n + j] += k.weights[t + k.radius];
      }
    }
    tmp_.resize(a_.size());
  }

  int size() const { return n_; }

  // noise and out are n x n row-major.
  void smooth(const double* noise, double* out) {
    if (n_ == 1) {
      out[0] = noise[0];
      return;
    }
    // Horizontal: tmp[y][x] = sum_j A[x][j] * noise[y][j].
    for (int y = 0; y < n_; ++y) {
      for (int x = 0; x < n_; ++x) {
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += a_[x * n_ + j] * noise[y * n_ + j];
        tmp_[y * n_ + x] = acc;
      }
    }
    // Vertical: out[y][x] = sum_i A[y][i] * tmp[i][x].
    for (int y = 0; y < n_; ++y) {
      for (int x = 0; x < n_; ++x) {
        double acc = 0.0;
        for (int i = 0; i < n_; ++i) acc += a_[y * n_ + i] * tmp_[i * n_ + x];
        out[y * n_ + x] = acc;
      }
    }
  }

 private:
  int n_;
  std::vector<double> a_;
  std::vector<double> tmp_;
};

void draw_smoothed_pair(PatchSmoother& smoother, Rng& rng,
                        std::vector<double>& noise, std::vector<double>& sx,
                        std::vector<double>& sy) {
  const std::size_t count = noise.size();
  for (std::size_t i = 0; i < count; ++i) noise[i] = rng.normal();
  smoother.smooth(noise.data(), sx.data());
  for (std::size_t i = 0; i < count; ++i) noise[i] = rng.normal();
  smoother.smooth(noise.data(), sy.data());
}

void check_field_params(int patch_n, double field_sigma, double eta) {
  if (patch_n < 1) throw std::invalid_argument("patch_n must be >= 1");
  if (!(field_sigma > 0.0)) {
    throw std::invalid_argument("field_sigma must be positive");
  }
  if (!(eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
}

}  // namespace

VectorField VectorField::zeros(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("field dimensions must be positive");
  }
  VectorField f;
  f.width = width;
  f.height = height;
  f.dx.assign(static_cast<std::size_t>(width) * height, 0.0);
  f.dy.assign(f.dx.size(), 0.0);
  return f;
}

VectorField patch_field(int patch_n, double field_sigma, double eta,
                        Rng& rng) {
  check_field_params(patch_n, field_sigma, eta);
  PatchSmoother smoother(patch_n, field_sigma);
  const std::size_t count = static_cast<std::size_t>(patch_n) * patch_n;
  std::vector<double> noise(count), sx(count), sy(count);
  draw_smoothed_pair(smoother, rng, noise, sx, sy);

  VectorField f = VectorField::zeros(patch_n, patch_n);
  for (std::size_t i = 0; i < count; ++i) {
    f.dx[i] = eta * sx[i];
    f.dy[i] = eta * sy[i];
  }
  return f;
}

VectorField accumulate_field(int width, int height,
                             const DegradationParams& params, Rng& rng) {
  params.validate();
  const int n = params.patch_n;
  if (width < n || height < n) {
    throw std::invalid_argument(
        "frame " + std::to_string(width) + "x" + std::to_string(height) +
        " is smaller than the " + std::to_string(n) + "x" + std::to_string(n) +
        " patch");
  }

  VectorField field = VectorField::zeros(width, height);
  if (params.m_points == 0) return field;

  Rng positions = rng.split("patch-positions");
  Rng patches = rng.split("patch-noise");
  PatchSmoother smoother(n, params.field_sigma);
  const std::size_t count = static_cast<std::size_t>(n) * n;
  std::vector<double> noise(count), sx(count), sy(count);

  for (int m = 0; m < params.m_points; ++m) {
    const int x0 = static_cast<int>(positions.uniform_below(width - n + 1));
    const int y0 = static_cast<int>(positions.uniform_below(height - n + 1));
    draw_smoothed_pair(smoother, patches, noise, sx, sy);
    for (int py = 0; py < n; ++py) {
      for (int px = 0; px < n; ++px) {
        const std::size_t dst = field.index(x0 + px, y0 + py);
        field.dx[dst] += sx[py * n + px];
        field.dy[dst] += sy[py * n + px];
      }
    }
  }
  for (std::size_t i = 0; i < field.dx.size(); ++i) {
    field.dx[i] *= params.eta;
    field.dy[i] *= params.eta;
  }
  return field;
}

Image visualize_field(const VectorField& field) {
  Image out(field.width, field.height, 1);
  std::vector<double> magnitude(field.dx.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    magnitude[i] = std::hypot(field.dx[i], field.dy[i]);
    peak = std::max(peak, magnitude[i]);
  }
  if (peak == 0.0) return out;
  auto samples = out.samples();
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    samples[i] = static_cast<float>(magnitude[i] / peak);
  }
  return out;
}

}  // namespace turbsim

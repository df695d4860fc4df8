#include "turbsim/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace turbsim {

namespace {

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(
        std::string(what) + ": shape mismatch (" + std::to_string(a.width()) +
        "x" + std::to_string(a.height()) + "x" + std::to_string(a.channels()) +
        " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()) +
        "x" + std::to_string(b.channels()) + ")");
  }
}

std::vector<double> window_1d(const SsimOptions& opt) {
  const int r = opt.window / 2;
  std::vector<double> g(opt.window);
  double sum = 0.0;
  for (int i = 0; i < opt.window; ++i) {
    const double d = i - r;
    g[i] = std::exp(-d * d / (2.0 * opt.window_sigma * opt.window_sigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

}  // namespace

double psnr(const Image& a, const Image& b) {
  require_same_shape(a, b, "psnr");
  const auto sa = a.samples();
  const auto sb = b.samples();
  double sse = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double d = static_cast<double>(sa[i]) - sb[i];
    sse += d * d;
  }
  if (sse == 0.0) return kPsnrMax;
  const double mse = sse / static_cast<double>(sa.size());
  return 10.0 * std::log10(1.0 / mse);
}

std::vector<double> ssim_window(const SsimOptions& options) {
  const auto g = window_1d(options);
  std::vector<double> w(g.size() * g.size());
  for (std::size_t y = 0; y < g.size(); ++y) {
    for (std::size_t x = 0; x < g.size(); ++x) w[y * g.size() + x] = g[y] * g[x];
  }
  return w;
}

double ssim(const Image& a, const Image& b, const SsimOptions& opt) {
  require_same_shape(a, b, "ssim");
  if (opt.window < 1 || opt.window % 2 == 0) {
    throw std::invalid_argument("ssim: window must be odd and positive");
  }
  if (a.width() < opt.window || a.height() < opt.window) {
    throw std::invalid_argument("ssim: image smaller than the " +
                                std::to_string(opt.window) + "-pixel window");
  }
  const auto g = window_1d(opt);
  const int win = opt.window;
  const int w = a.width();
  const int h = a.height();
  const int out_w = w - win + 1;
  const int out_h = h - win + 1;
  const double c1 = (opt.k1 * opt.dynamic_range) * (opt.k1 * opt.dynamic_range);
  const double c2 = (opt.k2 * opt.dynamic_range) * (opt.k2 * opt.dynamic_range);

  // Horizontal pass produces five moment maps of size out_w x h.
  const std::size_t hsize = static_cast<std::size_t>(out_w) * h;
  std::vector<double> ha(hsize), hb(hsize), haa(hsize), hbb(hsize), hab(hsize);

  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < out_w; ++x) {
        double ma = 0, mb = 0, maa = 0, mbb = 0, mab = 0;
        for (int t = 0; t < win; ++t) {
          const double va = a.at(x + t, y, c);
          const double vb = b.at(x + t, y, c);
          ma += g[t] * va;
          mb += g[t] * vb;
          maa += g[t] * va * va;
          mbb += g[t] * vb * vb;
          mab += g[t] * va * vb;
        }
        const std::size_t i = static_cast<std::size_t>(y) * out_w + x;
        ha[i] = ma;
        hb[i] = mb;
        haa[i] = maa;
        hbb[i] = mbb;
        hab[i] = mab;
      }
    }
    double channel_sum = 0.0;
    for (int y = 0; y < out_h; ++y) {
      for (int x = 0; x < out_w; ++x) {
        double mu_a = 0, mu_b = 0, e_aa = 0, e_bb = 0, e_ab = 0;
        for (int t = 0; t < win; ++t) {
          const std::size_t i = static_cast<std::size_t>(y + t) * out_w + x;
          mu_a += g[t] * ha[i];
          mu_b += g[t] * hb[i];
          e_aa += g[t] * haa[i];
          e_bb += g[t] * hbb[i];
          e_ab += g[t] * hab[i];
        }
        const double var_a = e_aa - mu_a * mu_a;
        const double var_b = e_bb - mu_b * mu_b;
        const double cov = e_ab - mu_a * mu_b;
        channel_sum += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
                       ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
      }
    }
    total += channel_sum / (static_cast<double>(out_w) * out_h);
  }
  return total / a.channels();
}

double feature_distance(const Image& a, const Image& b,
                        const FeatureExtractor& extractor) {
  require_same_shape(a, b, "feature_distance");
  const auto fa = extractor(a);
  const auto fb = extractor(b);
  if (fa.size() != fb.size()) {
    throw std::invalid_argument("feature_distance: extractor output lengths differ (" +
                                std::to_string(fa.size()) + " vs " +
                                std::to_string(fb.size()) + ")");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const double d = fa[i] - fb[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace turbsim

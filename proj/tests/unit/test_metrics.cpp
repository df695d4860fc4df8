#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "test_paths.hpp"
#include "turbsim/blur.hpp"
#include "turbsim/metrics.hpp"
#include "turbsim/png_io.hpp"
#include "turbsim/report.hpp"

using turbsim::Image;

namespace {

Image offset(const Image& img, float delta) {
  Image out = img;
  for (float& s : out.samples()) s += delta;
  return out;
}

std::vector<double> flatten(const Image& img) {
  return {img.samples().begin(), img.samples().end()};
}

}  // namespace

// ------------------------------------------------------------------ psnr

TEST_CASE("psnr of identical images is the max sentinel") {
  const Image a = oracle::random_image(8, 8, 3, 1);
  CHECK(turbsim::psnr(a, a) == turbsim::kPsnrMax);
  CHECK(std::isinf(turbsim::psnr(a, a)));
}

TEST_CASE("uniform 0.1 offset gives 20 dB") {
  const Image a = oracle::random_image(8, 8, 1, 2);
  // float storage of a + 0.1 carries ~1e-8 error per sample.
  CHECK(turbsim::psnr(a, offset(a, 0.1f)) == doctest::Approx(20.0).epsilon(1e-6));
}

TEST_CASE("psnr of an exactly representable offset is -20 log10(delta)") {
  Image a(8, 8, 3);
  for (std::size_t i = 0; i < a.size(); ++i) a.samples()[i] = static_cast<float>(i % 64) / 256.0f;
  for (float delta : {0.125f, 0.25f, 0.0625f, 0.5f}) {
    CHECK(turbsim::psnr(a, offset(a, delta)) ==
          doctest::Approx(-20.0 * std::log10(static_cast<double>(delta))).epsilon(1e-13));
  }
}

TEST_CASE("psnr matches a brute-force MSE oracle") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const Image a = oracle::random_image(8, 8, seed % 2 ? 3 : 1, seed);
    const Image b = oracle::random_image(8, 8, seed % 2 ? 3 : 1, seed + 1000);
    CHECK(std::abs(turbsim::psnr(a, b) - oracle::psnr(a, b)) <= 1e-9);
  }
}

TEST_CASE("psnr and ssim are symmetric") {
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const Image a = oracle::random_image(16, 16, 3, seed);
    const Image b = turbsim::gaussian_blur(a, 1.0 + seed % 3);
    CHECK(turbsim::psnr(a, b) == turbsim::psnr(b, a));
    CHECK(turbsim::ssim(a, b) == doctest::Approx(turbsim::ssim(b, a)).epsilon(1e-14));
  }
}

TEST_CASE("metrics reject shape mismatches") {
  CHECK_THROWS_AS(turbsim::psnr(Image(8, 8, 1), Image(8, 8, 3)), std::invalid_argument);
  CHECK_THROWS_AS(turbsim::ssim(Image(16, 16, 1), Image(16, 15, 1)), std::invalid_argument);
  CHECK_THROWS_AS(turbsim::ssim(Image(10, 16, 1), Image(10, 16, 1)), std::invalid_argument);
}

// ------------------------------------------------------------------ ssim

TEST_CASE("ssim of identical images is exactly 1") {
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    const Image a = oracle::random_image(23, 19, seed % 2 ? 3 : 1, seed);
    CHECK(turbsim::ssim(a, a) == 1.0);
  }
}

TEST_CASE("ssim of two constant images is the luminance ratio") {
  const Image a(16, 16, 1, 0.3f);
  const Image b(16, 16, 1, 0.7f);
  const double mu_a = 0.3f, mu_b = 0.7f;  // the stored float values
  const double c1 = 0.01 * 0.01;
  const double expected = (2 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1);
  CHECK(turbsim::ssim(a, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ssim matches a dense per-window oracle") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const Image a = oracle::random_image(16, 16, seed % 2 ? 3 : 1, seed);
    const Image b = oracle::random_image(16, 16, seed % 2 ? 3 : 1, seed + 500);
    CHECK(std::abs(turbsim::ssim(a, b) - oracle::ssim(a, b)) <= 1e-6);
    const Image c = turbsim::gaussian_blur(a, 1.5);
    CHECK(std::abs(turbsim::ssim(a, c) - oracle::ssim(a, c)) <= 1e-6);
  }
}

TEST_CASE("ssim stays within [-1, 1]") {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const Image a = oracle::random_image(14, 14, 1, seed);
    Image b = a;
    // Mix of anti-correlated and unrelated pairs.
    if (seed % 2) {
      for (float& s : b.samples()) s = 1.0f - s;
    } else {
      b = oracle::random_image(14, 14, 1, seed + 77);
    }
    const double s = turbsim::ssim(a, b);
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("ssim against the blurred image decreases with blur strength") {
  for (const char* name : {"astronaut_s2_0.png", "chelsea_s1_0.png", "face_003.png",
                           "camera_s2_1.png"}) {
    const Image img = turbsim::load_png(std::filesystem::path(TURBSIM_TEST_DATA) /
                                        "corpus112" / name);
    double previous = 2.0;
    for (double sigma : {0.0, 1.0, 2.0, 3.0, 4.0}) {
      const double s = turbsim::ssim(img, turbsim::gaussian_blur(img, sigma));
      CHECK(s <= previous);
      previous = s;
    }
  }
}

// ------------------------------------------------------ feature distance

TEST_CASE("feature distance closed forms") {
  const Image a = oracle::random_image(6, 5, 3, 3);
  const turbsim::FeatureExtractor identity = flatten;
  const turbsim::FeatureExtractor mean_pixel = [](const Image& img) {
    const auto s = img.samples();
    return std::vector<double>{std::accumulate(s.begin(), s.end(), 0.0) / s.size()};
  };
  CHECK(turbsim::feature_distance(a, a, identity) == 0.0);
  CHECK(turbsim::feature_distance(a, a, mean_pixel) == 0.0);

  Image b = a;
  const int k = 7;
  for (int i = 0; i < k; ++i) b.samples()[i * 5] += 0.1f;
  double expected = 0.0;
  for (int i = 0; i < k; ++i) {
    const double d = static_cast<double>(b.samples()[i * 5]) - a.samples()[i * 5];
    expected += d * d;
  }
  CHECK(turbsim::feature_distance(a, b, identity) == doctest::Approx(std::sqrt(expected)));
  CHECK(turbsim::feature_distance(a, b, identity) ==
        doctest::Approx(0.1 * std::sqrt(static_cast<double>(k))).epsilon(1e-6));

  const Image c = oracle::random_image(6, 5, 3, 4);
  CHECK(turbsim::feature_distance(a, c, mean_pixel) ==
        doctest::Approx(std::abs(mean_pixel(a)[0] - mean_pixel(c)[0])));
}

TEST_CASE("feature distance rejects mismatched extractor output") {
  int calls = 0;
  const turbsim::FeatureExtractor ragged = [&](const Image&) {
    return std::vector<double>(++calls, 0.0);
  };
  CHECK_THROWS_AS(turbsim::feature_distance(Image(4, 4, 1), Image(4, 4, 1), ragged),
                  std::invalid_argument);
}

// ---------------------------------------------------------------- report

TEST_CASE("report means are arithmetic means excluding max psnr") {
  std::vector<turbsim::MetricItem> items = {
      {"a", 20.0, 0.5}, {"b", turbsim::kPsnrMax, 1.0}, {"c", 30.0, 0.8}};
  const auto r = turbsim::summarize(items);
  CHECK(r.count() == 3);
  CHECK(r.psnr_max_count() == 1);
  CHECK(*r.mean_psnr == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(*r.mean_ssim == doctest::Approx((0.5 + 1.0 + 0.8) / 3).epsilon(1e-12));
}

TEST_CASE("empty and all-identical reports leave means undefined") {
  const auto empty = turbsim::summarize({});
  CHECK(empty.count() == 0);
  CHECK_FALSE(empty.mean_psnr);
  CHECK_FALSE(empty.mean_ssim);
  CHECK(turbsim::report_to_table(empty).find("undefined") != std::string::npos);

  const auto same = turbsim::summarize({{"x", turbsim::kPsnrMax, 1.0}});
  CHECK_FALSE(same.mean_psnr);
  CHECK(*same.mean_ssim == 1.0);
}

TEST_CASE("report JSON Lines round trip preserves every value") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> psnr_dist(10.0, 50.0), ssim_dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<turbsim::MetricItem> items;
    std::vector<turbsim::ItemError> errors;
    for (int i = 0; i < trial; ++i) {
      const double p = (i % 5 == 4) ? turbsim::kPsnrMax : psnr_dist(gen);
      items.push_back({"id_" + std::to_string(i), p, ssim_dist(gen)});
    }
    if (trial % 3 == 0) errors.push_back({"bad_" + std::to_string(trial), "missing \"file\""});
    const auto report = turbsim::summarize(items, errors);
    const auto back = turbsim::report_from_jsonl(turbsim::report_to_jsonl(report));
    CHECK(back == report);
  }
}

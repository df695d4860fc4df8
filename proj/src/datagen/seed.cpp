#include <stdexcept>

#include "turbsim/dataset.hpp"

namespace turbsim {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed) ^ mix64(index + kGolden));
}

void DatasetConfig::validate() const {
  if (m_choices.empty()) throw std::invalid_argument("m_choices is empty");
  if (blur_choices.empty()) throw std::invalid_argument("blur_choices is empty");
  for (int m : m_choices) {
    if (m < 0) throw std::invalid_argument("m_choices entries must be >= 0");
  }
  for (double b : blur_choices) {
    if (!(b >= 0.0)) throw std::invalid_argument("blur_choices entries must be >= 0");
  }
  if (image_width < 1 || image_height < 1) {
    throw std::invalid_argument("image size must be positive");
  }
  // Remaining bounds are the per-image ones.
  DegradationParams probe;
  probe.eta = eta;
  probe.patch_n = patch_n;
  probe.field_sigma = field_sigma;
  probe.noise_sigma = noise_sigma;
  probe.validate();
  if (image_width < patch_n || image_height < patch_n) {
    throw std::invalid_argument("image size is smaller than the patch");
  }
}

DegradationParams sample_params(Rng& rng, const DatasetConfig& config) {
  DegradationParams p;
  p.eta = config.eta;
  p.patch_n = config.patch_n;
  p.field_sigma = config.field_sigma;
  p.noise_sigma = config.noise_sigma;
  p.m_points = config.m_choices[rng.uniform_below(config.m_choices.size())];
  p.blur_sigma =
      config.blur_choices[rng.uniform_below(config.blur_choices.size())];
  if (config.order) {
    p.order = *config.order;
  } else {
    p.order = rng.uniform_below(2) == 0 ? Order::BlurThenWarp
                                        : Order::WarpThenBlur;
  }
  return p;
}

DegradationParams params_from_seed(const DatasetConfig& config,
                                   std::uint64_t seed) {
  Rng rng = Rng(seed).split("params");
  DegradationParams p = sample_params(rng, config);
  p.seed = seed;
  return p;
}

DegradationParams params_for_index(const DatasetConfig& config,
                                   std::uint64_t index) {
  return params_from_seed(config, derive_seed(config.master_seed, index));
}

}  // namespace turbsim

#pragma once

#include <filesystem>

#include "turbsim/dataset.hpp"
#include "turbsim/report.hpp"

namespace turbsim {

/// PSNR and SSIM of restored_dir/<id>.png against each row's clean image,
/// in manifest order. Missing or mis-shaped restorations are listed in
/// report.errors and the remaining rows are still evaluated.
MetricReport evaluate_pairs(const Manifest& manifest,
                            const std::filesystem::path& restored_dir,
                            int workers = 0);

}  // namespace turbsim

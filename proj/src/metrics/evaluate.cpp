#include "turbsim/evaluate.hpp"

#include <optional>

#include "common/parallel.hpp"
#include "turbsim/metrics.hpp"
#include "turbsim/png_io.hpp"

namespace turbsim {

MetricReport evaluate_pairs(const Manifest& manifest,
                            const std::filesystem::path& restored_dir,
                            int workers) {
  struct Outcome {
    std::optional<MetricItem> item;
    std::optional<ItemError> error;
  };
  std::vector<Outcome> outcomes(manifest.rows.size());

  detail::parallel_for(manifest.rows.size(), workers, [&](std::size_t i) {
    const ManifestRow& row = manifest.rows[i];
    try {
      const Image clean = load_png(manifest.root / row.clean_path);
      const Image restored = load_png(restored_dir / (row.id + ".png"));
      if (!restored.same_shape(clean)) {
        outcomes[i].error = ItemError{
            row.id, "shape mismatch: restored " + std::to_string(restored.width()) +
                        "x" + std::to_string(restored.height()) + "x" +
                        std::to_string(restored.channels()) + ", clean " +
                        std::to_string(clean.width()) + "x" +
                        std::to_string(clean.height()) + "x" +
                        std::to_string(clean.channels())};
        return;
      }
      outcomes[i].item = MetricItem{row.id, psnr(restored, clean), ssim(restored, clean)};
    } catch (const std::exception& e) {
      outcomes[i].error = ItemError{row.id, e.what()};
    }
  });

  std::vector<MetricItem> items;
  std::vector<ItemError> errors;
  for (auto& o : outcomes) {
    if (o.item) items.push_back(std::move(*o.item));
    if (o.error) errors.push_back(std::move(*o.error));
  }
  return summarize(std::move(items), std::move(errors));
}

}  // namespace turbsim

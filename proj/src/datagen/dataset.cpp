#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <system_error>

#include "common/parallel.hpp"
#include "turbsim/dataset.hpp"
#include "turbsim/degrade.hpp"
#include "turbsim/metrics.hpp"
#include "turbsim/png_io.hpp"

namespace turbsim {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRoleDirs[] = {"clean", "blur", "deform", "distort"};

bool has_png_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

struct Slot {
  std::optional<ManifestRow> row;
  std::optional<MetricItem> metric;
  std::optional<std::string> error;
};

Image prepare_input(const fs::path& path, const DatasetConfig& config) {
  Image img = load_png(path);
  if (img.width() == config.image_width && img.height() == config.image_height) {
    return img;
  }
  const std::string size = std::to_string(img.width()) + "x" + std::to_string(img.height());
  const std::string want = std::to_string(config.image_width) + "x" +
                           std::to_string(config.image_height);
  if (!config.center_crop) {
    throw std::runtime_error("size " + size + " does not match " + want);
  }
  if (img.width() < config.image_width || img.height() < config.image_height) {
    throw std::runtime_error("size " + size + " is smaller than " + want);
  }
  return center_crop(img, config.image_width, config.image_height);
}

}  // namespace

std::vector<fs::path> list_png_inputs(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw DatasetError("input directory " + dir.string() + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_png_extension(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

GenerationResult generate_dataset(const DatasetConfig& config) {
  config.validate();
  SsimOptions ssim_opts;
  if (config.image_width < ssim_opts.window || config.image_height < ssim_opts.window) {
    throw std::invalid_argument("image size must be at least " +
                                std::to_string(ssim_opts.window) +
                                " pixels for the baseline SSIM");
  }

  std::vector<fs::path> inputs = list_png_inputs(config.input_dir);
  if (inputs.empty()) {
    throw DatasetError("no PNG inputs in " + config.input_dir.string());
  }
  if (config.limit && *config.limit < inputs.size()) inputs.resize(*config.limit);

  for (const char* role : kRoleDirs) {
    std::error_code ec;
    fs::create_directories(config.output_dir / role, ec);
    if (ec) {
      throw DatasetError("cannot create " + (config.output_dir / role).string() +
                         ": " + ec.message());
    }
  }

  std::vector<Slot> slots(inputs.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string id = inputs[i].stem().string();
    if (!seen.insert(id).second) slots[i].error = "duplicate id '" + id + "'";
  }

  try {
    detail::parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
      Slot& slot = slots[i];
      if (slot.error) return;
      Image clean;
      try {
        clean = quantized(prepare_input(inputs[i], config));
      } catch (const std::exception& e) {
        slot.error = e.what();
        return;
      }
      const DegradationParams params = params_for_index(config, i);
      const DegradedQuad quad = degrade(clean, params);

      ManifestRow row;
      row.index = i;
      row.id = inputs[i].stem().string();
      row.source = inputs[i].filename().string();
      row.clean_path = "clean/" + row.id + ".png";
      row.blurred_path = "blur/" + row.id + ".png";
      row.deformed_path = "deform/" + row.id + ".png";
      row.distorted_path = "distort/" + row.id + ".png";
      row.params = params;

      const Image distorted = quantized(quad.distorted);
      save_png(quad.clean, config.output_dir / row.clean_path);
      save_png(quad.blurred, config.output_dir / row.blurred_path);
      save_png(quad.deformed, config.output_dir / row.deformed_path);
      save_png(distorted, config.output_dir / row.distorted_path);

      slot.metric = MetricItem{row.id, psnr(distorted, clean), ssim(distorted, clean)};
      slot.row = std::move(row);
    });
  } catch (const IoError& e) {
    throw DatasetError(e.what());
  }

  GenerationResult result;
  result.manifest.config = config;
  result.manifest.root = config.output_dir;
  std::vector<MetricItem> items;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].error) {
      result.failures.push_back({inputs[i].filename().string(), *slots[i].error});
      continue;
    }
    result.manifest.rows.push_back(std::move(*slots[i].row));
    items.push_back(std::move(*slots[i].metric));
  }
  result.baseline = summarize(std::move(items));
  result.manifest_path = config.output_dir / "manifest.jsonl";
  try {
    write_manifest(result.manifest, result.manifest_path);
    write_report(result.baseline, config.output_dir / "baseline_report.jsonl");
  } catch (const IoError& e) {
    throw DatasetError(e.what());
  }
  return result;
}

}  // namespace turbsim

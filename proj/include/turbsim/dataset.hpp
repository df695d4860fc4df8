#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "turbsim/params.hpp"
#include "turbsim/report.hpp"
#include "turbsim/rng.hpp"

namespace turbsim {

/// Inputs to generate_dataset(). Defaults are the training-time settings:
/// eta 0.13, 4x4 patches smoothed with sigma 16, M drawn from
/// {1000, 3000, 7000, 10000}, blur std drawn from {1, 2, 3, 4}, 112x112.
struct DatasetConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  std::uint64_t master_seed = 0;
  double eta = 0.13;
  int patch_n = 4;
  double field_sigma = 16.0;
  std::vector<int> m_choices = {1000, 3000, 7000, 10000};
  std::vector<double> blur_choices = {1.0, 2.0, 3.0, 4.0};
  double noise_sigma = 0.0;
  std::optional<Order> order;  // empty: drawn per image
  int image_width = 112;
  int image_height = 112;
  bool center_crop = false;  // otherwise mismatched sizes are rejected
  std::optional<std::size_t> limit;
  int workers = 0;  // 0: hardware concurrency; never affects output

  /// Throws std::invalid_argument on an empty choice list or bad bound.
  void validate() const;
};

/// Per-image seed: mix64(mix64(master) ^ mix64(index + golden)). mix64 is
/// a bijection, so distinct indices never collide under one master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Draws M, the blur std and (if not fixed) the order uniformly; copies the
/// remaining fields from the config. params.seed is left at 0.
DegradationParams sample_params(Rng& rng, const DatasetConfig& config);

/// Parameters drawn from the "params" sub-stream of `seed`, with
/// params.seed = seed.
DegradationParams params_from_seed(const DatasetConfig& config,
                                   std::uint64_t seed);

/// Degradation parameters of image `index`, exactly as generate_dataset
/// assigns them: params_from_seed(config, derive_seed(master, index)).
DegradationParams params_for_index(const DatasetConfig& config,
                                   std::uint64_t index);

struct ManifestRow {
  std::uint64_t index = 0;  // position in sorted input order
  std::string id;           // input file stem
  std::string source;       // input file name
  std::string clean_path;   // relative to the manifest directory
  std::string blurred_path;
  std::string deformed_path;
  std::string distorted_path;
  DegradationParams params;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

struct Manifest {
  DatasetConfig config;
  std::vector<ManifestRow> rows;
  std::filesystem::path root;  // directory the row paths are relative to
};

/// JSON Lines: a {"type":"config"} header, then one {"type":"row"} record
/// per row. Field names are documented in the README.
std::string manifest_to_jsonl(const Manifest& manifest);
Manifest manifest_from_jsonl(const std::string& text);
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerationResult {
  Manifest manifest;
  std::vector<ItemError> failures;  // inputs skipped, by file name
  MetricReport baseline;            // distorted vs clean, as stored on disk
  std::filesystem::path manifest_path;
};

/// PNG inputs of a directory in byte-wise sorted file-name order.
std::vector<std::filesystem::path> list_png_inputs(const std::filesystem::path& dir);

/// Degrades every input into output_dir/{clean,blur,deform,distort}/<id>.png
/// and writes output_dir/manifest.jsonl and output_dir/baseline_report.jsonl.
/// Output bytes depend only on the config, not on the worker count.
/// Throws DatasetError when there are no inputs or the output is unwritable;
/// unreadable or mis-sized inputs are collected in `failures`.
GenerationResult generate_dataset(const DatasetConfig& config);

}  // namespace turbsim

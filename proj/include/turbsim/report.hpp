#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace turbsim {

struct MetricItem {
  std::string id;
  double psnr = 0.0;  // kPsnrMax when the pair is identical
  double ssim = 0.0;

  bool psnr_is_max() const;

  friend bool operator==(const MetricItem&, const MetricItem&) = default;
};

struct ItemError {
  std::string id;
  std::string message;

  friend bool operator==(const ItemError&, const ItemError&) = default;
};

/// Aggregated PSNR/SSIM over a set of evaluated pairs. Items are kept in
/// the order they were evaluated (manifest order). mean_psnr excludes
/// identical pairs; a mean is empty when there is nothing to average.
struct MetricReport {
  std::vector<MetricItem> items;
  std::vector<ItemError> errors;
  std::optional<double> mean_psnr;
  std::optional<double> mean_ssim;

  std::size_t count() const { return items.size(); }
  std::size_t psnr_max_count() const;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// Builds a report from per-item results, filling in the means.
MetricReport summarize(std::vector<MetricItem> items,
                       std::vector<ItemError> errors = {});

/// JSON Lines: one {"type":"item"} record per item, one {"type":"error"}
/// record per failed id, then a single {"type":"summary"} record.
std::string report_to_jsonl(const MetricReport& report);
MetricReport report_from_jsonl(const std::string& text);

/// Fixed-width text table with a trailing mean row.
std::string report_to_table(const MetricReport& report);

void write_report(const MetricReport& report, const std::filesystem::path& path);
MetricReport read_report(const std::filesystem::path& path);

}  // namespace turbsim

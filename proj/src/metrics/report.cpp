#include "turbsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "turbsim/metrics.hpp"
#include "turbsim/png_io.hpp"

namespace turbsim {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

bool MetricItem::psnr_is_max() const { return std::isinf(psnr) && psnr > 0; }

std::size_t MetricReport::psnr_max_count() const {
  std::size_t n = 0;
  for (const auto& item : items) n += item.psnr_is_max() ? 1 : 0;
  return n;
}

MetricReport summarize(std::vector<MetricItem> items,
                       std::vector<ItemError> errors) {
  MetricReport report;
  report.items = std::move(items);
  report.errors = std::move(errors);
  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  std::size_t psnr_n = 0;
  for (const auto& item : report.items) {
    if (!item.psnr_is_max()) {
      psnr_sum += item.psnr;
      ++psnr_n;
    }
    ssim_sum += item.ssim;
  }
  if (psnr_n > 0) report.mean_psnr = psnr_sum / static_cast<double>(psnr_n);
  if (!report.items.empty()) {
    report.mean_ssim = ssim_sum / static_cast<double>(report.items.size());
  }
  return report;
}

std::string report_to_jsonl(const MetricReport& report) {
  std::string out;
  for (const auto& item : report.items) {
    json j = {{"type", "item"},
              {"id", item.id},
              {"psnr", item.psnr_is_max() ? json(nullptr) : json(item.psnr)},
              {"psnr_max", item.psnr_is_max()},
              {"ssim", item.ssim}};
    out += j.dump() + "\n";
  }
  for (const auto& err : report.errors) {
    json j = {{"type", "error"}, {"id", err.id}, {"message", err.message}};
    out += j.dump() + "\n";
  }
  json summary = {{"type", "summary"},
                  {"count", report.count()},
                  {"mean_psnr", optional_number(report.mean_psnr)},
                  {"mean_ssim", optional_number(report.mean_ssim)},
                  {"psnr_max_count", report.psnr_max_count()},
                  {"error_count", report.errors.size()}};
  out += summary.dump() + "\n";
  return out;
}

MetricReport report_from_jsonl(const std::string& text) {
  MetricReport report;
  bool have_summary = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "item") {
      MetricItem item;
      item.id = j.at("id").get<std::string>();
      item.psnr = j.at("psnr_max").get<bool>() ? kPsnrMax
                                               : j.at("psnr").get<double>();
      item.ssim = j.at("ssim").get<double>();
      report.items.push_back(std::move(item));
    } else if (type == "error") {
      report.errors.push_back(
          {j.at("id").get<std::string>(), j.at("message").get<std::string>()});
    } else if (type == "summary") {
      report.mean_psnr = read_optional(j, "mean_psnr");
      report.mean_ssim = read_optional(j, "mean_ssim");
      have_summary = true;
    } else {
      throw std::runtime_error("report: unknown record type '" + type + "'");
    }
  }
  if (!have_summary) throw std::runtime_error("report: missing summary record");
  return report;
}

std::string report_to_table(const MetricReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-32s %12s %10s\n", "id", "psnr_db", "ssim");
  out += line;
  for (const auto& item : report.items) {
    if (item.psnr_is_max()) {
      std::snprintf(line, sizeof(line), "%-32s %12s %10.6f\n", item.id.c_str(),
                    "max", item.ssim);
    } else {
      std::snprintf(line, sizeof(line), "%-32s %12.4f %10.6f\n",
                    item.id.c_str(), item.psnr, item.ssim);
    }
    out += line;
  }
  for (const auto& err : report.errors) {
    out += "error " + err.id + ": " + err.message + "\n";
  }
  const std::string label = "mean (" + std::to_string(report.count()) + ")";
  char psnr_text[32] = "undefined";
  char ssim_text[32] = "undefined";
  if (report.mean_psnr) std::snprintf(psnr_text, sizeof(psnr_text), "%.4f", *report.mean_psnr);
  if (report.mean_ssim) std::snprintf(ssim_text, sizeof(ssim_text), "%.6f", *report.mean_ssim);
  std::snprintf(line, sizeof(line), "%-32s %12s %10s\n", label.c_str(),
                psnr_text, ssim_text);
  out += line;
  return out;
}

void write_report(const MetricReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << report_to_jsonl(report);
  if (!out) throw IoError("write failed for " + path.string());
}

MetricReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return report_from_jsonl(ss.str());
}

}  // namespace turbsim

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "turbsim/dataset.hpp"
#include "turbsim/png_io.hpp"

namespace turbsim {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "turbsim-manifest/1";

json params_to_json(const DegradationParams& p) {
  return {{"seed", p.seed},
          {"eta", p.eta},
          {"patch_n", p.patch_n},
          {"field_sigma", p.field_sigma},
          {"m_points", p.m_points},
          {"blur_sigma", p.blur_sigma},
          {"noise_sigma", p.noise_sigma},
          {"order", std::string(to_string(p.order))}};
}

Order order_from_json(const json& j) {
  const auto text = j.get<std::string>();
  const auto order = parse_order(text);
  if (!order) throw std::runtime_error("manifest: unknown order '" + text + "'");
  return *order;
}

DegradationParams params_from_json(const json& j) {
  DegradationParams p;
  p.seed = j.at("seed").get<std::uint64_t>();
  p.eta = j.at("eta").get<double>();
  p.patch_n = j.at("patch_n").get<int>();
  p.field_sigma = j.at("field_sigma").get<double>();
  p.m_points = j.at("m_points").get<int>();
  p.blur_sigma = j.at("blur_sigma").get<double>();
  p.noise_sigma = j.at("noise_sigma").get<double>();
  p.order = order_from_json(j.at("order"));
  return p;
}

json config_to_json(const DatasetConfig& c) {
  return {{"type", "config"},
          {"format", kFormat},
          {"input_dir", c.input_dir.string()},
          {"output_dir", c.output_dir.string()},
          {"master_seed", c.master_seed},
          {"eta", c.eta},
          {"patch_n", c.patch_n},
          {"field_sigma", c.field_sigma},
          {"m_choices", c.m_choices},
          {"blur_choices", c.blur_choices},
          {"noise_sigma", c.noise_sigma},
          {"order", c.order ? std::string(to_string(*c.order)) : "random"},
          {"image_width", c.image_width},
          {"image_height", c.image_height},
          {"center_crop", c.center_crop},
          {"limit", c.limit ? json(*c.limit) : json(nullptr)}};
}

DatasetConfig config_from_json(const json& j) {
  if (j.value("format", "") != kFormat) {
    throw std::runtime_error("manifest: unsupported format '" +
                             j.value("format", "") + "'");
  }
  DatasetConfig c;
  c.input_dir = j.at("input_dir").get<std::string>();
  c.output_dir = j.at("output_dir").get<std::string>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.eta = j.at("eta").get<double>();
  c.patch_n = j.at("patch_n").get<int>();
  c.field_sigma = j.at("field_sigma").get<double>();
  c.m_choices = j.at("m_choices").get<std::vector<int>>();
  c.blur_choices = j.at("blur_choices").get<std::vector<double>>();
  c.noise_sigma = j.at("noise_sigma").get<double>();
  if (j.at("order").get<std::string>() != "random") {
    c.order = order_from_json(j.at("order"));
  }
  c.image_width = j.at("image_width").get<int>();
  c.image_height = j.at("image_height").get<int>();
  c.center_crop = j.at("center_crop").get<bool>();
  if (!j.at("limit").is_null()) c.limit = j.at("limit").get<std::size_t>();
  return c;
}

}  // namespace

std::string manifest_to_jsonl(const Manifest& manifest) {
  std::string out = config_to_json(manifest.config).dump() + "\n";
  for (const auto& row : manifest.rows) {
    json j = {{"type", "row"},
              {"index", row.index},
              {"id", row.id},
              {"source", row.source},
              {"clean", row.clean_path},
              {"blurred", row.blurred_path},
              {"deformed", row.deformed_path},
              {"distorted", row.distorted_path},
              {"params", params_to_json(row.params)}};
    out += j.dump() + "\n";
  }
  return out;
}

Manifest manifest_from_jsonl(const std::string& text) {
  Manifest manifest;
  bool have_config = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const auto type = j.at("type").get<std::string>();
    if (type == "config") {
      manifest.config = config_from_json(j);
      have_config = true;
    } else if (type == "row") {
      ManifestRow row;
      row.index = j.at("index").get<std::uint64_t>();
      row.id = j.at("id").get<std::string>();
      row.source = j.at("source").get<std::string>();
      row.clean_path = j.at("clean").get<std::string>();
      row.blurred_path = j.at("blurred").get<std::string>();
      row.deformed_path = j.at("deformed").get<std::string>();
      row.distorted_path = j.at("distorted").get<std::string>();
      row.params = params_from_json(j.at("params"));
      manifest.rows.push_back(std::move(row));
    } else {
      throw std::runtime_error("manifest: unknown record type '" + type + "'");
    }
  }
  if (!have_config) throw std::runtime_error("manifest: missing config record");
  return manifest;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << manifest_to_jsonl(manifest);
  if (!out) throw IoError("write failed for " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  Manifest manifest = manifest_from_jsonl(ss.str());
  manifest.root = path.parent_path();
  return manifest;
}

}  // namespace turbsim

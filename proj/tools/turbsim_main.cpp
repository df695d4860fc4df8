// turbsim: turbulence degradation, dataset generation and evaluation.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "turbsim/dataset.hpp"
#include "turbsim/degrade.hpp"
#include "turbsim/evaluate.hpp"
#include "turbsim/field.hpp"
#include "turbsim/png_io.hpp"
#include "turbsim/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

// Options shared by every subcommand that builds degradation parameters.
struct ParamOptions {
  std::uint64_t seed = 0;
  double eta = 0.13;
  int patch_n = 4;
  double field_sigma = 16.0;
  std::vector<int> m_points = {1000, 3000, 7000, 10000};
  std::vector<double> blur_sigma = {1.0, 2.0, 3.0, 4.0};
  double noise_sigma = 0.0;
  std::string order = "random";

  void add_to(CLI::App& app, bool with_blur_and_order = true) {
    app.add_option("--seed", seed, "Master random seed")->capture_default_str();
    app.add_option("--eta", eta, "Motion field strength")->capture_default_str();
    app.add_option("--patch-n", patch_n, "Side of each random patch, pixels")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--field-sigma", field_sigma,
                   "Std of the Gaussian smoothing each patch, pixels")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--m-points", m_points,
                   "Number of patches M; several values are sampled uniformly")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    if (!with_blur_and_order) return;
    app.add_option("--blur-sigma", blur_sigma,
                   "Gaussian blur std, pixels; several values are sampled uniformly")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--noise-sigma", noise_sigma, "Additive Gaussian noise std")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--order", order, "Blur/warp composition order")
        ->capture_default_str()
        ->check(CLI::IsMember({"blur-warp", "warp-blur", "random"}));
  }

  turbsim::DatasetConfig to_config() const {
    turbsim::DatasetConfig c;
    c.master_seed = seed;
    c.eta = eta;
    c.patch_n = patch_n;
    c.field_sigma = field_sigma;
    c.m_choices = m_points;
    c.blur_choices = blur_sigma;
    c.noise_sigma = noise_sigma;
    if (order != "random") c.order = turbsim::parse_order(order);
    return c;
  }
};

// Config files mirror the flags: `seed = 7`, `m-points = [1000, 3000]`.
// Unsectioned keys are routed to whichever subcommand is being run.
class SubcommandConfig : public CLI::ConfigTOML {
 public:
  explicit SubcommandConfig(const CLI::App* app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    const auto selected = app_->get_subcommands();
    if (selected.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {selected.front()->get_name()};
    }
    return items;
  }

 private:
  const CLI::App* app_;
};

nlohmann::json params_json(const turbsim::DegradationParams& p) {
  return {{"seed", p.seed},
          {"eta", p.eta},
          {"patch_n", p.patch_n},
          {"field_sigma", p.field_sigma},
          {"m_points", p.m_points},
          {"blur_sigma", p.blur_sigma},
          {"noise_sigma", p.noise_sigma},
          {"order", std::string(turbsim::to_string(p.order))}};
}

int run_degrade(const fs::path& input, const fs::path& output_dir,
                const ParamOptions& opts) {
  turbsim::DatasetConfig config = opts.to_config();
  config.validate();
  const turbsim::DegradationParams params =
      turbsim::params_from_seed(config, opts.seed);
  const turbsim::Image clean = turbsim::quantized(turbsim::load_png(input));
  const turbsim::DegradedQuad quad = turbsim::degrade(clean, params);

  fs::create_directories(output_dir);
  turbsim::save_png(quad.clean, output_dir / "clean.png");
  turbsim::save_png(quad.blurred, output_dir / "blur.png");
  turbsim::save_png(quad.deformed, output_dir / "deform.png");
  turbsim::save_png(quad.distorted, output_dir / "distort.png");
  std::ofstream(output_dir / "params.json") << params_json(params).dump(2) << "\n";

  std::cout << turbsim::describe(params) << "\n";
  return 0;
}

int run_gen_dataset(turbsim::DatasetConfig config) {
  const turbsim::GenerationResult result = turbsim::generate_dataset(config);
  std::cout << "rows: " << result.manifest.rows.size() << "\n"
            << "manifest: " << result.manifest_path.string() << "\n";
  if (result.baseline.mean_psnr && result.baseline.mean_ssim) {
    std::cout << "baseline mean psnr: " << *result.baseline.mean_psnr
              << " dB, mean ssim: " << *result.baseline.mean_ssim << "\n";
  }
  for (const auto& f : result.failures) {
    std::cerr << "skipped " << f.id << ": " << f.message << "\n";
  }
  return result.failures.empty() ? 0 : kRuntimeError;
}

int run_evaluate(const fs::path& manifest_path, const fs::path& restored_dir,
                 const fs::path& report_path, const std::string& table_path,
                 int workers) {
  const turbsim::Manifest manifest = turbsim::read_manifest(manifest_path);
  const turbsim::MetricReport report =
      turbsim::evaluate_pairs(manifest, restored_dir, workers);
  turbsim::write_report(report, report_path);
  const std::string table = turbsim::report_to_table(report);
  if (!table_path.empty()) std::ofstream(table_path) << table;
  std::cout << table;
  for (const auto& e : report.errors) {
    std::cerr << "error " << e.id << ": " << e.message << "\n";
  }
  return report.errors.empty() ? 0 : kRuntimeError;
}

int run_viz_field(const fs::path& output, int width, int height,
                  const ParamOptions& opts) {
  turbsim::DatasetConfig config = opts.to_config();
  config.blur_choices = {0.0};
  config.validate();
  const turbsim::DegradationParams params =
      turbsim::params_from_seed(config, opts.seed);
  const turbsim::VectorField field =
      turbsim::degradation_field(width, height, params);
  turbsim::save_png(turbsim::visualize_field(field), output);
  std::cout << turbsim::describe(params) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atmospheric turbulence degradation toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  app.set_config("--config", "", "TOML file whose keys mirror the flags; flags override it");
  app.config_formatter(std::make_shared<SubcommandConfig>(&app));
  app.fallthrough();

  // degrade
  auto* degrade_cmd = app.add_subcommand("degrade", "Degrade one image into a quad");
  fs::path degrade_input;
  fs::path degrade_output;
  ParamOptions degrade_opts;
  degrade_cmd->add_option("--input", degrade_input, "Clean PNG")->required();
  degrade_cmd->add_option("--output-dir", degrade_output, "Directory for the four PNGs")
      ->required();
  degrade_opts.add_to(*degrade_cmd);

  // gen-dataset
  auto* gen_cmd = app.add_subcommand("gen-dataset", "Generate a degraded dataset");
  fs::path gen_input;
  fs::path gen_output;
  ParamOptions gen_opts;
  int gen_workers = 0;
  std::size_t gen_limit = 0;
  int gen_width = 112;
  int gen_height = 112;
  bool gen_center_crop = false;
  gen_cmd->add_option("--input-dir", gen_input, "Directory of clean PNGs")->required();
  gen_cmd->add_option("--output-dir", gen_output, "Dataset output directory")->required();
  gen_opts.add_to(*gen_cmd);
  gen_cmd->add_option("--workers", gen_workers, "Worker threads (0 = all cores)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--limit", gen_limit, "Maximum number of inputs (0 = all)")
      ->capture_default_str();
  gen_cmd->add_option("--width", gen_width, "Expected input width")->capture_default_str();
  gen_cmd->add_option("--height", gen_height, "Expected input height")->capture_default_str();
  gen_cmd->add_flag("--center-crop", gen_center_crop,
                    "Center-crop larger inputs instead of rejecting them");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "PSNR/SSIM of restorations against clean images");
  fs::path eval_manifest;
  fs::path eval_restored;
  fs::path eval_report;
  std::string eval_table;
  int eval_workers = 0;
  eval_cmd->add_option("--manifest", eval_manifest, "manifest.jsonl of the dataset")->required();
  eval_cmd->add_option("--restored-dir", eval_restored, "Directory of <id>.png restorations")
      ->required();
  eval_cmd->add_option("--report", eval_report, "Output report (JSON Lines)")->required();
  eval_cmd->add_option("--table", eval_table, "Also write the text table here");
  eval_cmd->add_option("--workers", eval_workers, "Worker threads (0 = all cores)")
      ->capture_default_str();

  // viz-field
  auto* viz_cmd = app.add_subcommand("viz-field", "Render a motion field's magnitude");
  fs::path viz_output;
  int viz_width = 112;
  int viz_height = 112;
  ParamOptions viz_opts;
  viz_cmd->add_option("--output", viz_output, "Output PNG")->required();
  viz_cmd->add_option("--width", viz_width, "Field width")->capture_default_str();
  viz_cmd->add_option("--height", viz_height, "Field height")->capture_default_str();
  viz_opts.add_to(*viz_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*degrade_cmd) return run_degrade(degrade_input, degrade_output, degrade_opts);
    if (*gen_cmd) {
      turbsim::DatasetConfig config = gen_opts.to_config();
      config.input_dir = gen_input;
      config.output_dir = gen_output;
      config.workers = gen_workers;
      config.image_width = gen_width;
      config.image_height = gen_height;
      config.center_crop = gen_center_crop;
      if (gen_limit > 0) config.limit = gen_limit;
      return run_gen_dataset(std::move(config));
    }
    if (*eval_cmd) {
      return run_evaluate(eval_manifest, eval_restored, eval_report, eval_table,
                          eval_workers);
    }
    if (*viz_cmd) return run_viz_field(viz_output, viz_width, viz_height, viz_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

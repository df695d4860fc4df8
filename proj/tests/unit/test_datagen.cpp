#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <unordered_set>

#include "test_paths.hpp"
#include "turbsim/dataset.hpp"
#include "turbsim/degrade.hpp"
#include "turbsim/evaluate.hpp"
#include "turbsim/png_io.hpp"

namespace fs = std::filesystem;
using turbsim::DatasetConfig;

namespace {

const fs::path kCorpus = fs::path(TURBSIM_TEST_DATA) / "corpus112";

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh scratch directory under the system temp dir.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("turbsim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Copies the first `count` corpus images (sorted) into a new input dir.
fs::path small_input(const std::string& name, std::size_t count) {
  const fs::path dir = scratch(name);
  auto files = turbsim::list_png_inputs(kCorpus);
  for (std::size_t i = 0; i < count && i < files.size(); ++i) {
    fs::copy_file(files[i], dir / files[i].filename());
  }
  return dir;
}

// Relative path -> bytes for every regular file under dir.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = read_bytes(e.path());
  }
  return out;
}

DatasetConfig light_config(const fs::path& in, const fs::path& out) {
  DatasetConfig c;
  c.input_dir = in;
  c.output_dir = out;
  c.master_seed = 2024;
  c.m_choices = {100, 300};
  return c;
}

}  // namespace

// ----------------------------------------------------------------- seeds

TEST_CASE("derive_seed is deterministic") {
  CHECK(turbsim::derive_seed(7, 3) == turbsim::derive_seed(7, 3));
  CHECK(turbsim::derive_seed(0, 0) == turbsim::derive_seed(0, 0));
}

TEST_CASE("derive_seed has no collisions over a million consecutive indices") {
  for (std::uint64_t master : {0ULL, 1ULL, 0xdeadbeefULL}) {
    std::vector<std::uint64_t> seeds(1'000'000);
    for (std::uint64_t i = 0; i < seeds.size(); ++i) seeds[i] = turbsim::derive_seed(master, i);
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
  }
}

TEST_CASE("changing the master seed changes nearly every derived seed") {
  for (auto [m1, m2] : {std::pair<std::uint64_t, std::uint64_t>{0, 1}, {1, 2}, {41, 42},
                        {0, 0x8000000000000000ULL}}) {
    int changed = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      changed += turbsim::derive_seed(m1, i) != turbsim::derive_seed(m2, i);
    }
    CHECK(changed >= 9'900);
  }
  // Neighbouring masters must not just permute the same seed set.
  std::unordered_set<std::uint64_t> a;
  for (std::uint64_t i = 0; i < 10'000; ++i) a.insert(turbsim::derive_seed(0, i));
  int shared = 0;
  for (std::uint64_t i = 0; i < 10'000; ++i) shared += a.count(turbsim::derive_seed(1, i));
  CHECK(shared == 0);
}

// ---------------------------------------------------------------- params

TEST_CASE("sample_params with singleton choices is fixed") {
  DatasetConfig c;
  c.m_choices = {777};
  c.blur_choices = {2.5};
  c.order = turbsim::Order::WarpThenBlur;
  c.eta = 0.2;
  c.noise_sigma = 0.01;
  turbsim::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto p = turbsim::sample_params(rng, c);
    CHECK(p.m_points == 777);
    CHECK(p.blur_sigma == 2.5);
    CHECK(p.order == turbsim::Order::WarpThenBlur);
    CHECK(p.eta == 0.2);
    CHECK(p.noise_sigma == 0.01);
    CHECK(p.patch_n == 4);
    CHECK(p.field_sigma == 16.0);
  }
}

TEST_CASE("sample_params draws uniformly") {
  DatasetConfig c;
  turbsim::Rng rng(99);
  std::map<int, int> m_counts;
  std::map<double, int> blur_counts;
  int blur_first = 0;
  constexpr int kDraws = 10'000;
  for (int i = 0; i < kDraws; ++i) {
    const auto p = turbsim::sample_params(rng, c);
    ++m_counts[p.m_points];
    ++blur_counts[p.blur_sigma];
    blur_first += p.order == turbsim::Order::BlurThenWarp;
  }
  REQUIRE(m_counts.size() == 4);
  REQUIRE(blur_counts.size() == 4);
  for (auto [m, n] : m_counts) CHECK(std::abs(n / double(kDraws) - 0.25) <= 0.05);
  for (auto [b, n] : blur_counts) CHECK(std::abs(n / double(kDraws) - 0.25) <= 0.05);
  CHECK(std::abs(blur_first / double(kDraws) - 0.5) <= 0.05);
}

TEST_CASE("sample_params is reproducible from the rng state") {
  DatasetConfig c;
  turbsim::Rng a(5), b(5);
  for (int i = 0; i < 20; ++i) CHECK(turbsim::sample_params(a, c) == turbsim::sample_params(b, c));
  CHECK(turbsim::params_for_index(c, 3) == turbsim::params_for_index(c, 3));
  CHECK(turbsim::params_for_index(c, 3).seed == turbsim::derive_seed(c.master_seed, 3));
}

TEST_CASE("config validation") {
  DatasetConfig c;
  CHECK_NOTHROW(c.validate());
  c.m_choices.clear();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = DatasetConfig{};
  c.blur_choices = {-1.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = DatasetConfig{};
  c.field_sigma = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

// -------------------------------------------------------------- manifest

TEST_CASE("manifest JSON Lines round trip") {
  turbsim::Manifest m;
  m.config.input_dir = "in";
  m.config.output_dir = "out";
  m.config.master_seed = 0xffffffffffffffffULL;
  m.config.limit = 5;
  m.config.order = turbsim::Order::WarpThenBlur;
  for (std::uint64_t i = 0; i < 4; ++i) {
    turbsim::ManifestRow row;
    row.index = i;
    row.id = "img" + std::to_string(i);
    row.source = row.id + ".png";
    row.clean_path = "clean/" + row.source;
    row.blurred_path = "blur/" + row.source;
    row.deformed_path = "deform/" + row.source;
    row.distorted_path = "distort/" + row.source;
    row.params = turbsim::params_for_index(m.config, i);
    m.rows.push_back(row);
  }
  const auto text = turbsim::manifest_to_jsonl(m);
  const auto back = turbsim::manifest_from_jsonl(text);
  CHECK(back.rows == m.rows);
  CHECK(back.config.master_seed == m.config.master_seed);
  CHECK(back.config.limit == m.config.limit);
  CHECK(back.config.order == m.config.order);
  CHECK(turbsim::manifest_to_jsonl(back) == text);
}

// ------------------------------------------------------------ generation

TEST_CASE("generated rows reproduce their quads through degrade alone") {
  const fs::path in = small_input("repro_in", 3);
  const fs::path out = scratch("repro_out");
  DatasetConfig c = light_config(in, out);
  c.limit = 1;
  const auto result = turbsim::generate_dataset(c);
  REQUIRE(result.manifest.rows.size() == 1);
  REQUIRE(result.failures.empty());

  const auto manifest = turbsim::read_manifest(result.manifest_path);
  const auto& row = manifest.rows.at(0);
  CHECK(row.params.seed == turbsim::derive_seed(c.master_seed, 0));
  const auto clean = turbsim::load_png(manifest.root / row.clean_path);
  const auto quad = turbsim::degrade(clean, row.params);
  CHECK(turbsim::quantized(quad.blurred) == turbsim::load_png(manifest.root / row.blurred_path));
  CHECK(turbsim::quantized(quad.deformed) == turbsim::load_png(manifest.root / row.deformed_path));
  CHECK(turbsim::quantized(quad.distorted) ==
        turbsim::load_png(manifest.root / row.distorted_path));
}

TEST_CASE("output layout and manifest completeness") {
  const fs::path in = small_input("layout_in", 4);
  const fs::path out = scratch("layout_out");
  const auto result = turbsim::generate_dataset(light_config(in, out));
  REQUIRE(result.manifest.rows.size() == 4);
  std::unordered_set<std::string> ids;
  for (const auto& row : result.manifest.rows) {
    CHECK(ids.insert(row.id).second);
    for (const char* role : {"clean", "blur", "deform", "distort"}) {
      CHECK(fs::exists(out / role / (row.id + ".png")));
    }
  }
  CHECK(fs::exists(out / "manifest.jsonl"));
  CHECK(fs::exists(out / "baseline_report.jsonl"));
  CHECK(result.baseline.count() == 4);
}

TEST_CASE("generation is independent of worker count and re-entrant") {
  const fs::path in = small_input("workers_in", 6);
  const fs::path out = scratch("workers_out");
  DatasetConfig c = light_config(in, out);
  c.workers = 1;
  turbsim::generate_dataset(c);
  const auto one = snapshot(out);

  fs::remove_all(out);
  c.workers = 4;
  turbsim::generate_dataset(c);
  CHECK(snapshot(out) == one);

  // Rerun over existing outputs.
  c.workers = 3;
  turbsim::generate_dataset(c);
  CHECK(snapshot(out) == one);
}

TEST_CASE("bad inputs are collected and generation continues") {
  const fs::path in = small_input("bad_in", 3);
  fs::copy_file(fs::path(TURBSIM_TEST_DATA) / "fixtures" / "not_a_png.png", in / "broken.png");
  fs::copy_file(fs::path(TURBSIM_TEST_DATA) / "fixtures" / "rgb_3x2.png", in / "tiny.png");
  const fs::path out = scratch("bad_out");
  const auto result = turbsim::generate_dataset(light_config(in, out));
  CHECK(result.manifest.rows.size() == 3);
  REQUIRE(result.failures.size() == 2);
  CHECK(result.failures[0].id == "broken.png");
  CHECK(result.failures[1].id == "tiny.png");
  CHECK(result.failures[1].message.find("does not match") != std::string::npos);
  // Indices follow sorted input order, so the failures do not shift seeds.
  for (const auto& row : result.manifest.rows) {
    const auto inputs = turbsim::list_png_inputs(in);
    CHECK(inputs.at(row.index).filename().string() == row.source);
  }
}

TEST_CASE("mismatched sizes are rejected unless center-crop is on") {
  const fs::path in = scratch("crop_in");
  turbsim::save_png(turbsim::Image(130, 120, 3, 0.5f), in / "big.png");
  const fs::path out = scratch("crop_out");
  DatasetConfig c = light_config(in, out);
  auto result = turbsim::generate_dataset(c);
  CHECK(result.manifest.rows.empty());
  CHECK(result.failures.size() == 1);
  c.center_crop = true;
  result = turbsim::generate_dataset(c);
  REQUIRE(result.manifest.rows.size() == 1);
  CHECK(turbsim::load_png(out / "clean" / "big.png").width() == 112);
}

TEST_CASE("empty input directory is an error naming the directory") {
  const fs::path in = scratch("empty_in");
  DatasetConfig c = light_config(in, scratch("empty_out"));
  try {
    turbsim::generate_dataset(c);
    FAIL("expected DatasetError");
  } catch (const turbsim::DatasetError& e) {
    CHECK(std::string(e.what()).find(in.string()) != std::string::npos);
  }
  c.input_dir = in / "missing";
  CHECK_THROWS_AS(turbsim::generate_dataset(c), turbsim::DatasetError);
}

// ------------------------------------------------------------ evaluation

TEST_CASE("evaluating clean copies gives ssim 1 and max psnr") {
  const fs::path in = small_input("eval_in", 3);
  const fs::path out = scratch("eval_out");
  const auto result = turbsim::generate_dataset(light_config(in, out));
  const auto report = turbsim::evaluate_pairs(result.manifest, out / "clean");
  CHECK(report.count() == 3);
  CHECK(report.psnr_max_count() == 3);
  CHECK(*report.mean_ssim == 1.0);
  CHECK_FALSE(report.mean_psnr);
}

TEST_CASE("evaluating the distorted images reproduces the baseline exactly") {
  const fs::path in = small_input("self_in", 5);
  const fs::path out = scratch("self_out");
  const auto result = turbsim::generate_dataset(light_config(in, out));
  const auto manifest = turbsim::read_manifest(result.manifest_path);
  const auto report = turbsim::evaluate_pairs(manifest, out / "distort", 2);
  CHECK(report == result.baseline);
  CHECK(turbsim::report_to_jsonl(report) == read_bytes(out / "baseline_report.jsonl"));
}

TEST_CASE("missing and mis-shaped restorations are reported per id") {
  const fs::path in = small_input("miss_in", 3);
  const fs::path out = scratch("miss_out");
  const auto result = turbsim::generate_dataset(light_config(in, out));
  const fs::path restored = scratch("miss_restored");
  const auto& rows = result.manifest.rows;
  fs::copy_file(out / rows[0].distorted_path, restored / (rows[0].id + ".png"));
  turbsim::save_png(turbsim::Image(50, 50, 3), restored / (rows[2].id + ".png"));
  const auto report = turbsim::evaluate_pairs(result.manifest, restored);
  CHECK(report.count() == 1);
  REQUIRE(report.errors.size() == 2);
  CHECK(report.errors[0].id == rows[1].id);
  CHECK(report.errors[1].id == rows[2].id);
  CHECK(report.errors[1].message.find("shape mismatch") != std::string::npos);
}

TEST_CASE("empty manifest evaluates to an empty report") {
  turbsim::Manifest m;
  const auto report = turbsim::evaluate_pairs(m, fs::temp_directory_path());
  CHECK(report.count() == 0);
  CHECK(report.items.empty());
  CHECK_FALSE(report.mean_psnr);
  CHECK_FALSE(report.mean_ssim);
}

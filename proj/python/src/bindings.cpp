#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <stdexcept>

#include "turbsim/blur.hpp"
#include "turbsim/dataset.hpp"
#include "turbsim/degrade.hpp"
#include "turbsim/evaluate.hpp"
#include "turbsim/field.hpp"
#include "turbsim/metrics.hpp"
#include "turbsim/png_io.hpp"
#include "turbsim/warp.hpp"

namespace py = pybind11;
using turbsim::Image;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Accepts H x W (gray) or H x W x C with C in {1, 3}.
Image to_image(const FloatArray& array) {
  if (array.ndim() != 2 && array.ndim() != 3) {
    throw std::invalid_argument("image array must be HxW or HxWxC");
  }
  const int h = static_cast<int>(array.shape(0));
  const int w = static_cast<int>(array.shape(1));
  const int c = array.ndim() == 3 ? static_cast<int>(array.shape(2)) : 1;
  std::vector<float> data(array.data(), array.data() + array.size());
  return Image(w, h, c, std::move(data));
}

// Always H x W x C.
py::array_t<float> to_array(const Image& img) {
  py::array_t<float> out({img.height(), img.width(), img.channels()});
  std::memcpy(out.mutable_data(), img.samples().data(), img.size() * sizeof(float));
  return out;
}

py::array_t<double> plane(const std::vector<double>& values, int width, int height) {
  py::array_t<double> out({height, width});
  std::memcpy(out.mutable_data(), values.data(), values.size() * sizeof(double));
  return out;
}

py::tuple field_to_tuple(const turbsim::VectorField& f) {
  return py::make_tuple(plane(f.dx, f.width, f.height), plane(f.dy, f.width, f.height));
}

turbsim::VectorField field_from_arrays(const DoubleArray& dx, const DoubleArray& dy) {
  if (dx.ndim() != 2 || dy.ndim() != 2 || dx.shape(0) != dy.shape(0) ||
      dx.shape(1) != dy.shape(1)) {
    throw std::invalid_argument("dx and dy must be HxW arrays of the same shape");
  }
  auto f = turbsim::VectorField::zeros(static_cast<int>(dx.shape(1)),
                                       static_cast<int>(dx.shape(0)));
  std::memcpy(f.dx.data(), dx.data(), f.dx.size() * sizeof(double));
  std::memcpy(f.dy.data(), dy.data(), f.dy.size() * sizeof(double));
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Turbulence degradation simulator core";

  py::register_exception<turbsim::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<turbsim::DatasetError>(m, "DatasetError", PyExc_RuntimeError);

  m.attr("PSNR_MAX") = turbsim::kPsnrMax;

  py::enum_<turbsim::Order>(m, "Order")
      .value("BLUR_THEN_WARP", turbsim::Order::BlurThenWarp)
      .value("WARP_THEN_BLUR", turbsim::Order::WarpThenBlur);

  py::class_<turbsim::DegradationParams>(m, "DegradationParams")
      .def(py::init<>())
      .def_readwrite("eta", &turbsim::DegradationParams::eta)
      .def_readwrite("patch_n", &turbsim::DegradationParams::patch_n)
      .def_readwrite("field_sigma", &turbsim::DegradationParams::field_sigma)
      .def_readwrite("m_points", &turbsim::DegradationParams::m_points)
      .def_readwrite("blur_sigma", &turbsim::DegradationParams::blur_sigma)
      .def_readwrite("noise_sigma", &turbsim::DegradationParams::noise_sigma)
      .def_readwrite("order", &turbsim::DegradationParams::order)
      .def_readwrite("seed", &turbsim::DegradationParams::seed)
      .def("validate", &turbsim::DegradationParams::validate)
      .def(py::self == py::self)
      .def("__repr__", [](const turbsim::DegradationParams& p) {
        return "DegradationParams(" + turbsim::describe(p) + ")";
      });

  py::class_<turbsim::DatasetConfig>(m, "DatasetConfig")
      .def(py::init<>())
      .def_readwrite("input_dir", &turbsim::DatasetConfig::input_dir)
      .def_readwrite("output_dir", &turbsim::DatasetConfig::output_dir)
      .def_readwrite("master_seed", &turbsim::DatasetConfig::master_seed)
      .def_readwrite("eta", &turbsim::DatasetConfig::eta)
      .def_readwrite("patch_n", &turbsim::DatasetConfig::patch_n)
      .def_readwrite("field_sigma", &turbsim::DatasetConfig::field_sigma)
      .def_readwrite("m_choices", &turbsim::DatasetConfig::m_choices)
      .def_readwrite("blur_choices", &turbsim::DatasetConfig::blur_choices)
      .def_readwrite("noise_sigma", &turbsim::DatasetConfig::noise_sigma)
      .def_readwrite("order", &turbsim::DatasetConfig::order)
      .def_readwrite("image_width", &turbsim::DatasetConfig::image_width)
      .def_readwrite("image_height", &turbsim::DatasetConfig::image_height)
      .def_readwrite("center_crop", &turbsim::DatasetConfig::center_crop)
      .def_readwrite("limit", &turbsim::DatasetConfig::limit)
      .def_readwrite("workers", &turbsim::DatasetConfig::workers)
      .def("validate", &turbsim::DatasetConfig::validate);

  py::class_<turbsim::ManifestRow>(m, "ManifestRow")
      .def_readonly("index", &turbsim::ManifestRow::index)
      .def_readonly("id", &turbsim::ManifestRow::id)
      .def_readonly("source", &turbsim::ManifestRow::source)
      .def_readonly("clean_path", &turbsim::ManifestRow::clean_path)
      .def_readonly("blurred_path", &turbsim::ManifestRow::blurred_path)
      .def_readonly("deformed_path", &turbsim::ManifestRow::deformed_path)
      .def_readonly("distorted_path", &turbsim::ManifestRow::distorted_path)
      .def_readonly("params", &turbsim::ManifestRow::params);

  py::class_<turbsim::Manifest>(m, "Manifest")
      .def_readonly("config", &turbsim::Manifest::config)
      .def_readonly("rows", &turbsim::Manifest::rows)
      .def_readonly("root", &turbsim::Manifest::root);

  py::class_<turbsim::MetricItem>(m, "MetricItem")
      .def_readonly("id", &turbsim::MetricItem::id)
      .def_readonly("psnr", &turbsim::MetricItem::psnr)
      .def_readonly("ssim", &turbsim::MetricItem::ssim);

  py::class_<turbsim::MetricReport>(m, "MetricReport")
      .def_readonly("items", &turbsim::MetricReport::items)
      .def_property_readonly("errors",
                             [](const turbsim::MetricReport& r) {
                               py::list out;
                               for (const auto& e : r.errors) out.append(py::make_tuple(e.id, e.message));
                               return out;
                             })
      .def_readonly("mean_psnr", &turbsim::MetricReport::mean_psnr)
      .def_readonly("mean_ssim", &turbsim::MetricReport::mean_ssim)
      .def_property_readonly("count", &turbsim::MetricReport::count)
      .def_property_readonly("psnr_max_count", &turbsim::MetricReport::psnr_max_count)
      .def("to_jsonl", [](const turbsim::MetricReport& r) { return turbsim::report_to_jsonl(r); })
      .def("to_table", [](const turbsim::MetricReport& r) { return turbsim::report_to_table(r); })
      .def(py::self == py::self);

  py::class_<turbsim::GenerationResult>(m, "GenerationResult")
      .def_readonly("manifest", &turbsim::GenerationResult::manifest)
      .def_property_readonly("failures",
                             [](const turbsim::GenerationResult& r) {
                               py::list out;
                               for (const auto& e : r.failures) out.append(py::make_tuple(e.id, e.message));
                               return out;
                             })
      .def_readonly("baseline", &turbsim::GenerationResult::baseline)
      .def_readonly("manifest_path", &turbsim::GenerationResult::manifest_path);

  m.def("load_png", [](const std::filesystem::path& p) { return to_array(turbsim::load_png(p)); },
        py::arg("path"), "Load an 8/16-bit gray or RGB PNG as HxWxC float32 in [0, 1].");
  m.def("save_png",
        [](const FloatArray& img, const std::filesystem::path& p) {
          turbsim::save_png(to_image(img), p);
        },
        py::arg("image"), py::arg("path"), "Save as 8-bit PNG with clamping.");

  m.def("gaussian_kernel",
        [](double sigma, int radius) {
          const auto k = turbsim::gaussian_kernel(sigma, radius);
          return py::array_t<double>(k.weights.size(), k.weights.data());
        },
        py::arg("sigma"), py::arg("radius"));
  m.def("gaussian_blur",
        [](const FloatArray& img, double sigma) {
          return to_array(turbsim::gaussian_blur(to_image(img), sigma));
        },
        py::arg("image"), py::arg("sigma"));

  m.def("accumulate_field",
        [](int width, int height, const turbsim::DegradationParams& params, std::uint64_t seed) {
          turbsim::Rng rng(seed);
          return field_to_tuple(turbsim::accumulate_field(width, height, params, rng));
        },
        py::arg("width"), py::arg("height"), py::arg("params"), py::arg("seed"),
        "Returns (dx, dy), each HxW float64.");
  m.def("degradation_field",
        [](int width, int height, const turbsim::DegradationParams& params) {
          return field_to_tuple(turbsim::degradation_field(width, height, params));
        },
        py::arg("width"), py::arg("height"), py::arg("params"));
  m.def("warp",
        [](const FloatArray& img, const DoubleArray& dx, const DoubleArray& dy) {
          return to_array(turbsim::warp(to_image(img), field_from_arrays(dx, dy)));
        },
        py::arg("image"), py::arg("dx"), py::arg("dy"));
  m.def("visualize_field",
        [](const DoubleArray& dx, const DoubleArray& dy) {
          return to_array(turbsim::visualize_field(field_from_arrays(dx, dy)));
        },
        py::arg("dx"), py::arg("dy"));
  m.def("degrade",
        [](const FloatArray& img, const turbsim::DegradationParams& params) {
          const auto quad = turbsim::degrade(to_image(img), params);
          py::dict out;
          out["clean"] = to_array(quad.clean);
          out["blurred"] = to_array(quad.blurred);
          out["deformed"] = to_array(quad.deformed);
          out["distorted"] = to_array(quad.distorted);
          return out;
        },
        py::arg("image"), py::arg("params"),
        "Returns a dict with clean, blurred, deformed and distorted images.");

  m.def("psnr",
        [](const FloatArray& a, const FloatArray& b) {
          return turbsim::psnr(to_image(a), to_image(b));
        },
        py::arg("a"), py::arg("b"));
  m.def("ssim",
        [](const FloatArray& a, const FloatArray& b) {
          return turbsim::ssim(to_image(a), to_image(b));
        },
        py::arg("a"), py::arg("b"));

  m.def("derive_seed", &turbsim::derive_seed, py::arg("master_seed"), py::arg("index"));
  m.def("params_for_index", &turbsim::params_for_index, py::arg("config"), py::arg("index"));
  m.def("generate_dataset", &turbsim::generate_dataset, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("read_manifest", &turbsim::read_manifest, py::arg("path"));
  m.def("read_report", &turbsim::read_report, py::arg("path"));
  m.def("evaluate",
        [](const std::filesystem::path& manifest_path, const std::filesystem::path& restored_dir,
           int workers) {
          const auto manifest = turbsim::read_manifest(manifest_path);
          py::gil_scoped_release release;
          return turbsim::evaluate_pairs(manifest, restored_dir, workers);
        },
        py::arg("manifest"), py::arg("restored_dir"), py::arg("workers") = 0);
}

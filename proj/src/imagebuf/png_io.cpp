#include "turbsim/png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace turbsim {

namespace {

// libpng reports errors through longjmp. Every libpng call lives inside a
// small function that owns its setjmp and touches no non-trivial locals
// after it; failures surface as a message and become exceptions outside.
struct ErrorSink {
  char message[256] = {};
};

void on_error(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof(sink->message), "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct ReadHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ErrorSink sink;

  ReadHandles() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, on_error,
                                 on_warning);
    if (png) info = png_create_info_struct(png);
  }
  ~ReadHandles() { png_destroy_read_struct(&png, &info, nullptr); }
  ReadHandles(const ReadHandles&) = delete;
  ReadHandles& operator=(const ReadHandles&) = delete;
};

struct WriteHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ErrorSink sink;

  WriteHandles() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, on_error,
                                  on_warning);
    if (png) info = png_create_info_struct(png);
  }
  ~WriteHandles() { png_destroy_write_struct(&png, &info); }
  WriteHandles(const WriteHandles&) = delete;
  WriteHandles& operator=(const WriteHandles&) = delete;
};

struct Header {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  bool has_trns = false;
};

bool read_header(ReadHandles& h, std::FILE* fp, Header& out) {
  if (setjmp(png_jmpbuf(h.png))) return false;
  png_init_io(h.png, fp);
  png_read_info(h.png, h.info);
  out.width = png_get_image_width(h.png, h.info);
  out.height = png_get_image_height(h.png, h.info);
  out.bit_depth = png_get_bit_depth(h.png, h.info);
  out.color_type = png_get_color_type(h.png, h.info);
  out.has_trns = png_get_valid(h.png, h.info, PNG_INFO_tRNS) != 0;
  return true;
}

bool read_rows(ReadHandles& h, png_bytepp rows) {
  if (setjmp(png_jmpbuf(h.png))) return false;
  png_read_image(h.png, rows);
  png_read_end(h.png, nullptr);
  return true;
}

bool write_all(WriteHandles& h, std::FILE* fp, png_uint_32 width,
               png_uint_32 height, int color_type, png_bytepp rows) {
  if (setjmp(png_jmpbuf(h.png))) return false;
  png_init_io(h.png, fp);
  png_set_compression_level(h.png, 6);
  png_set_IHDR(h.png, h.info, width, height, 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(h.png, h.info);
  png_write_image(h.png, rows);
  png_write_end(h.png, nullptr);
  return true;
}

std::string describe_color_type(int color_type) {
  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY: return "gray";
    case PNG_COLOR_TYPE_RGB: return "rgb";
    case PNG_COLOR_TYPE_PALETTE: return "palette";
    case PNG_COLOR_TYPE_GRAY_ALPHA: return "gray+alpha";
    case PNG_COLOR_TYPE_RGB_ALPHA: return "rgb+alpha";
    default: return "type " + std::to_string(color_type);
  }
}

}  // namespace

Image load_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open " + path.string());

  unsigned char signature[8];
  if (std::fread(signature, 1, 8, fp.get()) != 8 ||
      png_sig_cmp(signature, 0, 8) != 0) {
    throw IoError(path.string() + ": not a PNG file");
  }

  ReadHandles h;
  if (!h.png || !h.info) throw IoError("libpng initialisation failed");
  png_set_sig_bytes(h.png, 8);

  Header hdr;
  if (!read_header(h, fp.get(), hdr)) {
    throw IoError(path.string() + ": " + h.sink.message);
  }

  int channels = 0;
  if (hdr.color_type == PNG_COLOR_TYPE_GRAY) {
    channels = 1;
  } else if (hdr.color_type == PNG_COLOR_TYPE_RGB) {
    channels = 3;
  } else {
    throw IoError(path.string() + ": unsupported channel layout (" +
                  describe_color_type(hdr.color_type) + ")");
  }
  if (hdr.has_trns) {
    throw IoError(path.string() +
                  ": unsupported channel layout (transparency chunk)");
  }
  if (hdr.bit_depth != 8 && hdr.bit_depth != 16) {
    throw IoError(path.string() + ": unsupported bit depth " +
                  std::to_string(hdr.bit_depth));
  }

  const std::size_t bytes_per_sample = hdr.bit_depth / 8;
  const std::size_t row_bytes = hdr.width * channels * bytes_per_sample;
  std::vector<png_byte> buffer(row_bytes * hdr.height);
  std::vector<png_bytep> rows(hdr.height);
  for (png_uint_32 y = 0; y < hdr.height; ++y) {
    rows[y] = buffer.data() + y * row_bytes;
  }
  if (!read_rows(h, rows.data())) {
    throw IoError(path.string() + ": " + h.sink.message);
  }

  std::vector<float> samples(static_cast<std::size_t>(hdr.width) * hdr.height *
                             channels);
  if (hdr.bit_depth == 8) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      samples[i] = static_cast<float>(buffer[i]) / 255.0f;
    }
  } else {
    // 16-bit samples are stored big-endian.
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const unsigned v = (unsigned{buffer[2 * i]} << 8) | buffer[2 * i + 1];
      samples[i] = static_cast<float>(v) / 65535.0f;
    }
  }
  return Image(static_cast<int>(hdr.width), static_cast<int>(hdr.height),
               channels, std::move(samples));
}

void save_png(const Image& img, const std::filesystem::path& path) {
  if (img.empty()) throw std::invalid_argument("cannot save an empty image");

  std::vector<png_byte> buffer(img.size());
  const auto samples = img.samples();
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    buffer[i] = to_byte(samples[i]);
  }
  const std::size_t row_bytes =
      static_cast<std::size_t>(img.width()) * img.channels();
  std::vector<png_bytep> rows(img.height());
  for (int y = 0; y < img.height(); ++y) {
    rows[y] = buffer.data() + y * row_bytes;
  }

  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot write " + path.string());

  WriteHandles h;
  if (!h.png || !h.info) throw IoError("libpng initialisation failed");
  const int color_type =
      img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  if (!write_all(h, fp.get(), img.width(), img.height(), color_type,
                 rows.data())) {
    throw IoError(path.string() + ": " + h.sink.message);
  }
  if (std::fflush(fp.get()) != 0) {
    throw IoError("write failed for " + path.string());
  }
}

}  // namespace turbsim

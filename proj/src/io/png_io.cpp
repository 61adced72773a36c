#include "io/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace hs::io {

namespace {

unsigned char to_byte(double v, double max) {
  double x = max > 0.0 ? v / max : 0.0;
  x = std::clamp(x, 0.0, 1.0);
  x = std::pow(x, 1.0 / 2.2);
  return static_cast<unsigned char>(std::lround(x * 255.0));
}

void write_png(const std::string& path, std::size_t rows, std::size_t cols, int color_type,
               std::vector<unsigned char>& pixels, std::size_t stride) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) fail(errc::io, "cannot open for writing: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    fail(errc::io, "png write failed: " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), 8,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t r = 0; r < rows; ++r) png_write_row(png, pixels.data() + r * stride);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

} // namespace

void write_png_gray(const std::string& path, const RealGrid& grid) {
  double max = 0.0;
  for (double v : grid) max = std::max(max, v);
  std::vector<unsigned char> pixels(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pixels[i] = to_byte(grid.data()[i], max);
  write_png(path, grid.rows(), grid.cols(), PNG_COLOR_TYPE_GRAY, pixels, grid.cols());
}

void write_png_rgb(const std::string& path, const RealGrid& r, const RealGrid& g,
                   const RealGrid& b) {
  require_same_shape("write_png_rgb", r.rows(), r.cols(), g.rows(), g.cols());
  require_same_shape("write_png_rgb", r.rows(), r.cols(), b.rows(), b.cols());
  double max = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    max = std::max({max, r.data()[i], g.data()[i], b.data()[i]});
  std::vector<unsigned char> pixels(r.size() * 3);
  for (std::size_t i = 0; i < r.size(); ++i) {
    pixels[3 * i + 0] = to_byte(r.data()[i], max);
    pixels[3 * i + 1] = to_byte(g.data()[i], max);
    pixels[3 * i + 2] = to_byte(b.data()[i], max);
  }
  write_png(path, r.rows(), r.cols(), PNG_COLOR_TYPE_RGB, pixels, r.cols() * 3);
}

} // namespace hs::io

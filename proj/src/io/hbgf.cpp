#include "io/hbgf.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace hs::io {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_payload(std::ostream& os, const double* values, std::size_t count, bool as_f32) {
  if (as_f32) {
    std::vector<float> tmp(values, values + count);
    os.write(reinterpret_cast<const char*>(tmp.data()),
             static_cast<std::streamsize>(count * sizeof(float)));
  } else {
    os.write(reinterpret_cast<const char*>(values),
             static_cast<std::streamsize>(count * sizeof(double)));
  }
}

struct Header {
  std::uint32_t rows, cols, channels, dtype;
};

Header write_open(std::ofstream& os, const std::string& path, std::uint32_t rows,
                  std::uint32_t cols, std::uint32_t channels, bool as_f32) {
  os.open(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(errc::io, "cannot open for writing: " + path);
  os.write("HBGF", 4);
  put_u32(os, rows);
  put_u32(os, cols);
  put_u32(os, channels);
  put_u32(os, as_f32 ? 0u : 1u);
  return Header{rows, cols, channels, as_f32 ? 0u : 1u};
}

Header read_open(std::ifstream& is, const std::string& path) {
  is.open(path, std::ios::binary);
  if (!is) fail(errc::io, "cannot open for reading: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "HBGF", 4) != 0)
    fail(errc::io, "not an HBGF file: " + path);
  Header h{get_u32(is), get_u32(is), get_u32(is), get_u32(is)};
  if (h.rows == 0 || h.cols == 0 || (h.channels != 1 && h.channels != 2) || h.dtype > 1)
    fail(errc::io, "invalid HBGF header: " + path);
  return h;
}

std::vector<double> read_payload(std::ifstream& is, const Header& h, const std::string& path) {
  std::size_t count = static_cast<std::size_t>(h.rows) * h.cols * h.channels;
  std::vector<double> values(count);
  if (h.dtype == 0) {
    std::vector<float> tmp(count);
    is.read(reinterpret_cast<char*>(tmp.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    for (std::size_t i = 0; i < count; ++i) values[i] = tmp[i];
  } else {
    is.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
  }
  if (!is) fail(errc::io, "truncated HBGF payload: " + path);
  return values;
}

} // namespace

void write_hbgf(const std::string& path, const RealGrid& grid, bool as_f32) {
  std::ofstream os;
  write_open(os, path, static_cast<std::uint32_t>(grid.rows()),
             static_cast<std::uint32_t>(grid.cols()), 1, as_f32);
  write_payload(os, grid.data(), grid.size(), as_f32);
  if (!os) fail(errc::io, "write failed: " + path);
}

void write_hbgf(const std::string& path, const ComplexGrid& grid, bool as_f32) {
  std::ofstream os;
  write_open(os, path, static_cast<std::uint32_t>(grid.rows()),
             static_cast<std::uint32_t>(grid.cols()), 2, as_f32);
  // std::complex<double> is layout-compatible with double[2] (re, im).
  write_payload(os, reinterpret_cast<const double*>(grid.data()), grid.size() * 2, as_f32);
  if (!os) fail(errc::io, "write failed: " + path);
}

RealGrid read_hbgf_real(const std::string& path) {
  std::ifstream is;
  Header h = read_open(is, path);
  if (h.channels != 1) fail(errc::io, "expected a real grid: " + path);
  auto values = read_payload(is, h, path);
  RealGrid grid(h.rows, h.cols);
  std::copy(values.begin(), values.end(), grid.data());
  return grid;
}

ComplexGrid read_hbgf_complex(const std::string& path) {
  std::ifstream is;
  Header h = read_open(is, path);
  if (h.channels != 2) fail(errc::io, "expected a complex grid: " + path);
  auto values = read_payload(is, h, path);
  ComplexGrid grid(h.rows, h.cols);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid.data()[i] = {values[2 * i], values[2 * i + 1]};
  return grid;
}

} // namespace hs::io

#include "wavefield/wavefield.hpp"

#include <cmath>
#include <numbers>

#include "wavefield/fft.hpp"

namespace hs::wave {

namespace {
constexpr double kPi = std::numbers::pi;

void check_physical(std::size_t rows, std::size_t cols, double pitch, double wavelength) {
  if (rows < 2 || cols < 2)
    fail(errc::invalid_param, "field grid must be at least 2x2");
  if (!(pitch > 0.0) || !std::isfinite(pitch))
    fail(errc::invalid_param, "pitch must be positive and finite");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength))
    fail(errc::invalid_param, "wavelength must be positive and finite");
}

void check_compatible(const ComplexField& f, const PropagationKernel& k) {
  require_same_shape("propagate", f.rows(), f.cols(), k.transfer.rows(), k.transfer.cols());
  if (f.pitch != k.pitch || f.wavelength != k.wavelength)
    fail(errc::incompatible_grid, "propagate: field and kernel pitch/wavelength differ");
}
} // namespace

double dft_frequency(std::size_t k, std::size_t n, double pitch) {
  // Standard DFT layout: 0..n/2-1 positive, then negative frequencies.
  double idx = static_cast<double>(k);
  if (k >= (n + 1) / 2) idx -= static_cast<double>(n);
  return idx / (static_cast<double>(n) * pitch);
}

ComplexField make_field(std::size_t rows, std::size_t cols, double pitch, double wavelength) {
  check_physical(rows, cols, pitch, wavelength);
  return ComplexField{ComplexGrid(rows, cols), pitch, wavelength};
}

PropagationKernel build_kernel(std::size_t rows, std::size_t cols, double pitch,
                               double wavelength, double distance) {
  check_physical(rows, cols, pitch, wavelength);
  if (!std::isfinite(distance)) fail(errc::invalid_param, "distance must be finite");

  PropagationKernel k;
  k.transfer = ComplexGrid(rows, cols);
  k.band_mask = BoolGrid(rows, cols, 0);
  k.distance = distance;
  k.pitch = pitch;
  k.wavelength = wavelength;

  double inv_wl2 = 1.0 / (wavelength * wavelength);
  // Band limit from the sampling criterion of the quadratic-phase transfer
  // function over the finite aperture of each axis.
  double len_x = static_cast<double>(cols) * pitch;
  double len_y = static_cast<double>(rows) * pitch;
  double fx_limit = 1.0 / (wavelength * std::sqrt(std::pow(2.0 * distance / len_x, 2) + 1.0));
  double fy_limit = 1.0 / (wavelength * std::sqrt(std::pow(2.0 * distance / len_y, 2) + 1.0));

  for (std::size_t r = 0; r < rows; ++r) {
    double fy = dft_frequency(r, rows, pitch);
    for (std::size_t c = 0; c < cols; ++c) {
      double fx = dft_frequency(c, cols, pitch);
      double arg = inv_wl2 - fx * fx - fy * fy;
      bool inside = arg > 0.0 && std::abs(fx) < fx_limit && std::abs(fy) < fy_limit;
      if (inside) {
        double phase = 2.0 * kPi * distance * std::sqrt(arg);
        k.transfer(r, c) = std::complex<double>(std::cos(phase), std::sin(phase));
        k.band_mask(r, c) = 1;
      }
    }
  }
  return k;
}

ComplexField propagate(const ComplexField& field, const PropagationKernel& kernel) {
  check_compatible(field, kernel);
  ComplexField out = field;
  fft2(out.data);
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data.data()[i] *= kernel.transfer.data()[i];
  ifft2(out.data);
  return out;
}

ComplexField propagate(const ComplexField& field, double distance) {
  return propagate(field, build_kernel(field.rows(), field.cols(), field.pitch,
                                       field.wavelength, distance));
}

ComplexField propagate_adjoint(const ComplexField& field, const PropagationKernel& kernel) {
  check_compatible(field, kernel);
  ComplexField out = field;
  fft2(out.data);
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data.data()[i] *= std::conj(kernel.transfer.data()[i]);
  ifft2(out.data);
  return out;
}

ComplexField propagate_padded(const ComplexField& field, double distance) {
  std::size_t rows = field.rows(), cols = field.cols();
  ComplexField padded = make_field(rows * 2, cols * 2, field.pitch, field.wavelength);
  std::size_t r0 = rows / 2, c0 = cols / 2;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      padded.data(r + r0, c + c0) = field.data(r, c);
  ComplexField prop = propagate(padded, distance);
  ComplexField out = make_field(rows, cols, field.pitch, field.wavelength);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out.data(r, c) = prop.data(r + r0, c + c0);
  return out;
}

RealGrid intensity(const ComplexField& field) {
  RealGrid out(field.rows(), field.cols());
  for (std::size_t i = 0; i < field.data.size(); ++i)
    out.data()[i] = std::norm(field.data.data()[i]);
  return out;
}

double field_energy(const ComplexField& field) {
  double sum = 0.0;
  for (const auto& v : field.data) sum += std::norm(v);
  return sum;
}

} // namespace hs::wave

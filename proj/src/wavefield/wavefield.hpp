#ifndef HS_WAVEFIELD_WAVEFIELD_HPP
#define HS_WAVEFIELD_WAVEFIELD_HPP

#include <complex>

#include "core/grid.hpp"

namespace hs::wave {

// Sampled complex optical wavefield on a uniform grid with physical pitch
// (meters per pixel) and wavelength (meters).
struct ComplexField {
  ComplexGrid data;
  double pitch = 0.0;
  double wavelength = 0.0;

  std::size_t rows() const { return data.rows(); }
  std::size_t cols() const { return data.cols(); }
};

ComplexField make_field(std::size_t rows, std::size_t cols, double pitch, double wavelength);

// Band-limited angular-spectrum transfer function. |transfer| is 1 inside the
// band mask and 0 outside; evanescent frequencies are always excluded. The
// kernel for -z is the conjugate of the kernel for +z.
struct PropagationKernel {
  ComplexGrid transfer;
  BoolGrid band_mask;
  double distance = 0.0;
  double pitch = 0.0;
  double wavelength = 0.0;
};

PropagationKernel build_kernel(std::size_t rows, std::size_t cols, double pitch,
                               double wavelength, double distance);

// inverse-DFT( DFT(field) .* transfer )
ComplexField propagate(const ComplexField& field, const PropagationKernel& kernel);

// Convenience: builds the kernel for the given distance and propagates.
ComplexField propagate(const ComplexField& field, double distance);

// Same, with the conjugate transfer function (the adjoint of propagate).
ComplexField propagate_adjoint(const ComplexField& field, const PropagationKernel& kernel);

// Embeds the field centered in a 2x zero-padded grid, propagates, and crops
// back, reducing circular wraparound.
ComplexField propagate_padded(const ComplexField& field, double distance);

RealGrid intensity(const ComplexField& field);
double field_energy(const ComplexField& field);

// DFT sample frequency for index k of n samples at the given pitch.
double dft_frequency(std::size_t k, std::size_t n, double pitch);

} // namespace hs::wave

#endif

#ifndef HS_WAVEFIELD_FFT_HPP
#define HS_WAVEFIELD_FFT_HPP

#include "core/grid.hpp"

namespace hs::wave {

// Unnormalized forward DFT (negative exponent). In-place.
void fft2(ComplexGrid& g);

// Inverse DFT carrying the 1/(rows*cols) factor. In-place.
void ifft2(ComplexGrid& g);

} // namespace hs::wave

#endif

#ifndef HS_IO_HBGF_HPP
#define HS_IO_HBGF_HPP

#include <string>

#include "core/grid.hpp"

namespace hs::io {

// HBGF binary grid format: magic "HBGF", little-endian u32 rows, cols,
// channels (1 = real, 2 = complex interleaved re/im), dtype tag (0 = f32,
// 1 = f64), then row-major payload.

void write_hbgf(const std::string& path, const RealGrid& grid, bool as_f32 = false);
void write_hbgf(const std::string& path, const ComplexGrid& grid, bool as_f32 = false);

RealGrid read_hbgf_real(const std::string& path);
ComplexGrid read_hbgf_complex(const std::string& path);

} // namespace hs::io

#endif

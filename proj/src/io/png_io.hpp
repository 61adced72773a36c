#ifndef HS_IO_PNG_IO_HPP
#define HS_IO_PNG_IO_HPP

#include <string>

#include "core/grid.hpp"

namespace hs::io {

// 8-bit PNG export, max-normalized then gamma-2.2 mapped. Presentation only;
// HBGF/CSV carry the comparison data.
void write_png_gray(const std::string& path, const RealGrid& grid);
void write_png_rgb(const std::string& path, const RealGrid& r, const RealGrid& g,
                   const RealGrid& b);

} // namespace hs::io

#endif

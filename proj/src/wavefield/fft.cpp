#include "wavefield/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace hs::wave {

namespace {
// FFTW planning is not thread-safe; execution of a plan on its own arrays is.
std::mutex plan_mutex;

void run(ComplexGrid& g, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(g.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_2d(static_cast<int>(g.rows()), static_cast<int>(g.cols()), ptr, ptr,
                            sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
}
} // namespace

void fft2(ComplexGrid& g) { run(g, FFTW_FORWARD); }

void ifft2(ComplexGrid& g) {
  run(g, FFTW_BACKWARD);
  double scale = 1.0 / static_cast<double>(g.rows() * g.cols());
  for (auto& v : g) v *= scale;
}

} // namespace hs::wave

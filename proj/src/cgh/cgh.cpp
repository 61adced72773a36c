#include "cgh/cgh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "core/rng.hpp"

namespace hs::cgh {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

double wrap_phase(double x) {
  double w = x - 2.0 * kPi * std::floor((x + kPi) / (2.0 * kPi));
  if (w >= kPi) w -= 2.0 * kPi; // guard against floating rounding at the seam
  return w;
}

PlaneTargetStack build_plane_targets(const RealGrid& image, const RealGrid& depth, int n_planes,
                                     double base_distance, double separation) {
  require_same_shape("build_plane_targets", image.rows(), image.cols(), depth.rows(),
                     depth.cols());
  if (n_planes < 1) fail(errc::invalid_param, "n_planes must be at least 1");
  if (!(separation > 0.0)) fail(errc::invalid_param, "plane separation must be positive");

  PlaneTargetStack stack;
  std::size_t rows = image.rows(), cols = image.cols();
  for (int p = 0; p < n_planes; ++p) {
    stack.targets.emplace_back(rows, cols, 0.0);
    stack.masks.emplace_back(rows, cols, 0);
    stack.distances.push_back(base_distance + p * separation);
    stack.weights.push_back(1.0);
  }

  // Equal bins over [0,1]; a value exactly on an interior edge goes to the
  // lower bin, the maximum depth joins the last bin.
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double d = depth(r, c);
      int bin;
      if (d <= 0.0) {
        bin = 0;
      } else {
        bin = static_cast<int>(std::ceil(d * n_planes)) - 1;
        bin = std::clamp(bin, 0, n_planes - 1);
      }
      stack.masks[bin](r, c) = 1;
      stack.targets[bin](r, c) = image(r, c);
    }
  }
  return stack;
}

std::pair<double, RealGrid> loss_and_gradient(const PhaseHologram& phase,
                                              const PlaneTargetStack& stack) {
  require_same_shape("loss_and_gradient", phase.rows(), phase.cols(), stack.rows(),
                     stack.cols());
  std::size_t rows = phase.rows(), cols = phase.cols();

  wave::ComplexField field = hologram_field(phase);

  double loss = 0.0;
  RealGrid grad(rows, cols, 0.0);
  for (std::size_t p = 0; p < stack.n_planes(); ++p) {
    auto kernel = wave::build_kernel(rows, cols, phase.pitch, phase.wavelength,
                                     stack.distances[p]);
    wave::ComplexField u = wave::propagate(field, kernel);

    double w = stack.weights[p];
    wave::ComplexField back = wave::make_field(rows, cols, phase.pitch, phase.wavelength);
    for (std::size_t i = 0; i < u.data.size(); ++i) {
      if (!stack.masks[p].data()[i]) continue;
      double resid = std::norm(u.data.data()[i]) - stack.targets[p].data()[i];
      loss += w * resid * resid;
      back.data.data()[i] = resid * u.data.data()[i];
    }
    wave::ComplexField adj = wave::propagate_adjoint(back, kernel);
    for (std::size_t i = 0; i < adj.data.size(); ++i)
      grad.data()[i] += 4.0 * w *
                        std::imag(std::conj(field.data.data()[i]) * adj.data.data()[i]);
  }
  return {loss, grad};
}

OptimizeResult optimize_multiplane_phase(const PlaneTargetStack& stack,
                                         const OptimizerConfig& config, double pitch,
                                         double wavelength) {
  if (config.iterations < 1) fail(errc::invalid_param, "iterations must be at least 1");
  if (!(config.step_size > 0.0)) fail(errc::invalid_param, "step_size must be positive");
  if (stack.n_planes() < 1) fail(errc::invalid_param, "target stack is empty");

  std::size_t rows = stack.rows(), cols = stack.cols();
  PhaseHologram h;
  h.phase = RealGrid(rows, cols);
  h.pitch = pitch;
  h.wavelength = wavelength;

  auto rng = make_engine(config.seed);
  std::uniform_real_distribution<double> uni(-kPi, kPi);
  for (auto& v : h.phase) v = uni(rng);

  OptimizeResult result;
  for (int it = 0; it < config.iterations; ++it) {
    auto [loss, grad] = loss_and_gradient(h, stack);
    if (!std::isfinite(loss))
      fail(errc::diverged, "optimizer diverged at iteration " + std::to_string(it));
    if (it % std::max(config.loss_report_every, 1) == 0) result.loss_trace.push_back(loss);
    for (std::size_t i = 0; i < h.phase.size(); ++i)
      h.phase.data()[i] -= config.step_size * grad.data()[i];
  }
  auto [final_loss, grad] = loss_and_gradient(h, stack);
  (void)grad;
  if (!std::isfinite(final_loss))
    fail(errc::diverged, "optimizer diverged at iteration " + std::to_string(config.iterations));
  result.loss_trace.push_back(final_loss);

  for (auto& v : h.phase) v = wrap_phase(v);
  result.hologram = std::move(h);
  return result;
}

std::pair<RealGrid, RealGrid> complex_to_double_phase(const wave::ComplexField& field,
                                                      double a_max) {
  if (!(a_max > 0.0)) fail(errc::invalid_param, "a_max must be positive");
  std::size_t rows = field.rows(), cols = field.cols();
  RealGrid chan_a(rows, cols), chan_b(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double a = std::abs(field.data(r, c));
      if (a > a_max * (1.0 + 1e-12))
        fail(errc::invalid_param, "complex_to_double_phase: amplitude exceeds a_max");
      double phi = std::arg(field.data(r, c));
      double off = std::acos(std::min(a / a_max, 1.0));
      chan_a(r, c) = wrap_phase(phi + off);
      chan_b(r, c) = wrap_phase(phi - off);
    }
  }
  return {chan_a, chan_b};
}

PhaseHologram double_phase_assemble(const RealGrid& chan_a, const RealGrid& chan_b, double pitch,
                                    double wavelength) {
  require_same_shape("double_phase_assemble", chan_a.rows(), chan_a.cols(), chan_b.rows(),
                     chan_b.cols());
  PhaseHologram h;
  h.phase = RealGrid(chan_a.rows(), chan_a.cols());
  h.pitch = pitch;
  h.wavelength = wavelength;
  for (std::size_t r = 0; r < chan_a.rows(); ++r)
    for (std::size_t c = 0; c < chan_a.cols(); ++c)
      h.phase(r, c) = ((r + c) % 2 == 0) ? chan_a(r, c) : chan_b(r, c);
  return h;
}

std::pair<RealGrid, RealGrid> double_phase_split(const PhaseHologram& h) {
  RealGrid chan_a(h.rows(), h.cols(), 0.0), chan_b(h.rows(), h.cols(), 0.0);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c)
      (((r + c) % 2 == 0) ? chan_a : chan_b)(r, c) = h.phase(r, c);
  return {chan_a, chan_b};
}

PhaseHologram apply_linear_grating(const PhaseHologram& h) {
  PhaseHologram out = h;
  for (std::size_t r = 1; r < out.rows(); r += 2)
    for (std::size_t c = 0; c < out.cols(); ++c)
      out.phase(r, c) = wrap_phase(out.phase(r, c) + kPi);
  return out;
}

std::vector<RealGrid> reconstruct_stack(const PhaseHologram& h,
                                        const std::vector<double>& distances) {
  wave::ComplexField field = hologram_field(h);
  std::vector<RealGrid> out;
  out.reserve(distances.size());
  for (double z : distances) out.push_back(wave::intensity(wave::propagate(field, z)));
  return out;
}

wave::ComplexField hologram_field(const PhaseHologram& h) {
  wave::ComplexField f = wave::make_field(h.rows(), h.cols(), h.pitch, h.wavelength);
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    double phi = h.phase.data()[i];
    f.data.data()[i] = std::complex<double>(std::cos(phi), std::sin(phi));
  }
  return f;
}

} // namespace hs::cgh

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cgh/cgh.hpp"
#include "wavefield/fft.hpp"

using namespace hs;
using namespace hs::cgh;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWl = 532e-9;
constexpr double kPitch = 8e-6;

PhaseHologram random_hologram(std::size_t rows, std::size_t cols, unsigned seed) {
  PhaseHologram h;
  h.phase = RealGrid(rows, cols);
  h.pitch = kPitch;
  h.wavelength = kWl;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-kPi, kPi);
  for (auto& v : h.phase) v = uni(rng);
  return h;
}

} // namespace

TEST_CASE("plane targets: constant depth lands everything in the first bin") {
  RealGrid image(8, 8, 0.5), depth(8, 8, 0.0);
  auto stack = build_plane_targets(image, depth, 6, 1e-3, 1e-3);
  REQUIRE(stack.n_planes() == 6);
  for (auto v : stack.masks[0]) CHECK(v == 1);
  for (int p = 1; p < 6; ++p)
    for (auto v : stack.masks[p]) CHECK(v == 0);
  CHECK(stack.targets[0] == image);
  for (int p = 0; p < 6; ++p)
    CHECK(stack.distances[p] == doctest::Approx(1e-3 + p * 1e-3));
}

TEST_CASE("plane targets: single plane covers all pixels") {
  RealGrid image(4, 4, 0.25), depth(4, 4, 0.7);
  auto stack = build_plane_targets(image, depth, 1, 2e-3, 1e-3);
  REQUIRE(stack.n_planes() == 1);
  for (auto v : stack.masks[0]) CHECK(v == 1);
  CHECK(stack.targets[0] == image);
}

TEST_CASE("plane targets: linear ramp splits into near-equal bins") {
  std::size_t cols = 600;
  RealGrid image(4, cols, 1.0), depth(4, cols);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      depth(r, c) = static_cast<double>(c) / (cols - 1);
  auto stack = build_plane_targets(image, depth, 6, 1e-3, 1e-3);

  // independent histogram oracle on the first row
  for (int p = 0; p < 6; ++p) {
    int count = 0;
    for (std::size_t c = 0; c < cols; ++c)
      if (stack.masks[p](0, c)) ++count;
    CHECK(std::abs(count - 100) <= 1);
  }
  // masks disjoint and covering
  for (std::size_t c = 0; c < cols; ++c) {
    int covered = 0;
    for (int p = 0; p < 6; ++p) covered += stack.masks[p](0, c);
    CHECK(covered == 1);
  }
}

TEST_CASE("plane targets: shape mismatch and bad plane count") {
  RealGrid image(4, 4), depth(4, 5);
  CHECK_THROWS_AS(build_plane_targets(image, depth, 2, 0.0, 1e-3), Error);
  RealGrid depth2(4, 4);
  CHECK_THROWS_AS(build_plane_targets(image, depth2, 0, 0.0, 1e-3), Error);
}

TEST_CASE("loss is zero for a unit target at the hologram plane") {
  auto h = random_hologram(16, 16, 3);
  RealGrid image(16, 16, 1.0), depth(16, 16, 0.0);
  auto stack = build_plane_targets(image, depth, 1, 0.0, 1e-3);
  auto [loss, grad] = loss_and_gradient(h, stack);
  CHECK(loss == doctest::Approx(0.0).epsilon(1e-12));
  for (double g : grad) CHECK(std::abs(g) <= 1e-12);
}

TEST_CASE("gradient matches central finite differences") {
  auto h = random_hologram(16, 16, 7);
  RealGrid image(16, 16), depth(16, 16);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (auto& v : image) v = uni(rng);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c)
      depth(r, c) = (c < 8) ? 0.2 : 0.8;
  auto stack = build_plane_targets(image, depth, 2, 1e-3, 1e-3);

  auto [loss, grad] = loss_and_gradient(h, stack);
  (void)loss;
  const double eps = 1e-5;
  std::uniform_int_distribution<std::size_t> pick(0, 255);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t idx = pick(rng);
    PhaseHologram hp = h, hm = h;
    hp.phase.data()[idx] += eps;
    hm.phase.data()[idx] -= eps;
    double fd = (loss_and_gradient(hp, stack).first - loss_and_gradient(hm, stack).first) /
                (2.0 * eps);
    double denom = std::max(std::abs(fd), 1e-8);
    CHECK(std::abs(grad.data()[idx] - fd) / denom <= 1e-4);
  }
}

TEST_CASE("doubling the weights doubles loss and gradient") {
  auto h = random_hologram(16, 16, 9);
  RealGrid image(16, 16, 0.4), depth(16, 16, 0.0);
  auto stack = build_plane_targets(image, depth, 2, 1e-3, 1e-3);
  auto [loss1, grad1] = loss_and_gradient(h, stack);
  for (auto& w : stack.weights) w *= 2.0;
  auto [loss2, grad2] = loss_and_gradient(h, stack);
  CHECK(loss2 == doctest::Approx(2.0 * loss1).epsilon(1e-12));
  for (std::size_t i = 0; i < grad1.size(); ++i)
    CHECK(grad2.data()[i] == doctest::Approx(2.0 * grad1.data()[i]).epsilon(1e-9));
}

TEST_CASE("optimizer: self-consistent target is driven far below the start") {
  // Target built from the reconstruction of a known hologram, so a perfect
  // solution exists.
  auto truth = random_hologram(32, 32, 17);
  std::vector<double> planes{1e-3, 2e-3};
  auto recon = reconstruct_stack(truth, planes);

  PlaneTargetStack stack;
  for (int p = 0; p < 2; ++p) {
    stack.targets.push_back(recon[p]);
    stack.masks.emplace_back(32, 32, 0);
    stack.distances.push_back(planes[p]);
    stack.weights.push_back(1.0);
  }
  // split coverage between the planes
  for (std::size_t r = 0; r < 32; ++r)
    for (std::size_t c = 0; c < 32; ++c)
      stack.masks[c < 16 ? 0 : 1](r, c) = 1;

  OptimizerConfig config{400, 0.02, 4, 1};
  auto result = optimize_multiplane_phase(stack, config, kPitch, kWl);
  CHECK(result.loss_trace.back() <= 0.01 * result.loss_trace.front());
  for (double v : result.hologram.phase) {
    CHECK(v >= -kPi);
    CHECK(v < kPi);
  }
}

TEST_CASE("optimizer: zero-gradient start returns the initialization") {
  RealGrid image(16, 16, 1.0), depth(16, 16, 0.0);
  auto stack = build_plane_targets(image, depth, 1, 0.0, 1e-3);
  OptimizerConfig config{5, 0.1, 11, 1};
  auto result = optimize_multiplane_phase(stack, config, kPitch, kWl);
  CHECK(result.loss_trace.front() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(result.loss_trace.back() == doctest::Approx(0.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-kPi, kPi);
  for (double v : result.hologram.phase)
    CHECK(v == doctest::Approx(wrap_phase(uni(rng))).epsilon(1e-12));
}

TEST_CASE("double phase: boundary values") {
  wave::ComplexField f = wave::make_field(2, 2, kPitch, kWl);
  f.data(0, 0) = std::polar(1.0, 0.7);       // a = a_max
  f.data(0, 1) = std::polar(0.5, 0.0);       // a = a_max/2
  auto [a, b] = complex_to_double_phase(f, 1.0);
  CHECK(a(0, 0) == doctest::Approx(0.7));
  CHECK(b(0, 0) == doctest::Approx(0.7));
  CHECK(a(0, 1) == doctest::Approx(kPi / 3.0));
  CHECK(b(0, 1) == doctest::Approx(-kPi / 3.0));
}

TEST_CASE("double phase: identity holds pointwise") {
  wave::ComplexField f = wave::make_field(16, 16, kPitch, kWl);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(0.0, 2.0), ph(-kPi, kPi);
  for (auto& v : f.data) v = std::polar(amp(rng), ph(rng));
  double a_max = 2.0;
  auto [a, b] = complex_to_double_phase(f, a_max);
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    auto lhs = 0.5 * (std::polar(1.0, a.data()[i]) + std::polar(1.0, b.data()[i]));
    auto rhs = f.data.data()[i] / a_max;
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("double phase: amplitude overflow is rejected") {
  wave::ComplexField f = wave::make_field(2, 2, kPitch, kWl);
  f.data(1, 1) = {1.5, 0.0};
  CHECK_THROWS_AS(complex_to_double_phase(f, 1.0), Error);
}

TEST_CASE("checkerboard assembly follows the 2x2 index pattern") {
  RealGrid a(2, 2), b(2, 2);
  a(0, 0) = 0.1; a(0, 1) = 0.2; a(1, 0) = 0.3; a(1, 1) = 0.4;
  b(0, 0) = 0.5; b(0, 1) = 0.6; b(1, 0) = 0.7; b(1, 1) = 0.8;
  auto h = double_phase_assemble(a, b, kPitch, kWl);
  CHECK(h.phase(0, 0) == doctest::Approx(0.1));
  CHECK(h.phase(0, 1) == doctest::Approx(0.6));
  CHECK(h.phase(1, 0) == doctest::Approx(0.7));
  CHECK(h.phase(1, 1) == doctest::Approx(0.4));
}

TEST_CASE("equal channels assemble to themselves and split back") {
  RealGrid a(6, 6);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(-kPi, kPi);
  for (auto& v : a) v = uni(rng);
  auto h = double_phase_assemble(a, a, kPitch, kWl);
  CHECK(h.phase == a);

  RealGrid b(6, 6);
  for (auto& v : b) v = uni(rng);
  auto h2 = double_phase_assemble(a, b, kPitch, kWl);
  auto [ra, rb] = double_phase_split(h2);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) {
      if ((r + c) % 2 == 0) CHECK(ra(r, c) == a(r, c));
      else CHECK(rb(r, c) == b(r, c));
    }
}

TEST_CASE("double-phase encode then box-average approximates the field") {
  // smooth field: gentle gaussian amplitude with a slowly varying phase
  std::size_t n = 64;
  wave::ComplexField f = wave::make_field(n, n, kPitch, kWl);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double x = (static_cast<double>(c) - 32.0) / 24.0;
      double y = (static_cast<double>(r) - 32.0) / 24.0;
      double amp = 0.2 + 0.7 * std::exp(-(x * x + y * y));
      double phase = 0.3 * x + 0.2 * y * y;
      f.data(r, c) = std::polar(amp, phase);
    }
  auto [a, b] = complex_to_double_phase(f, 1.0);
  auto h = double_phase_assemble(a, b, kPitch, kWl);

  double num = 0.0, den = 0.0;
  for (std::size_t r = 0; r + 1 < n; r += 2)
    for (std::size_t c = 0; c + 1 < n; c += 2) {
      std::complex<double> avg = 0.25 * (std::polar(1.0, h.phase(r, c)) +
                                         std::polar(1.0, h.phase(r, c + 1)) +
                                         std::polar(1.0, h.phase(r + 1, c)) +
                                         std::polar(1.0, h.phase(r + 1, c + 1)));
      std::complex<double> want = 0.25 * (f.data(r, c) + f.data(r, c + 1) +
                                          f.data(r + 1, c) + f.data(r + 1, c + 1));
      num += std::norm(avg - want);
      den += std::norm(want);
    }
  CHECK(std::sqrt(num / den) <= 0.15);
}

TEST_CASE("linear grating flips odd rows") {
  PhaseHologram h;
  h.phase = RealGrid(4, 4, 0.0);
  h.pitch = kPitch;
  h.wavelength = kWl;
  auto g = apply_linear_grating(h);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      std::complex<double> field = std::polar(1.0, -g.phase(r, c));
      double expected = (r % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(field - std::complex<double>(expected, 0.0)) <= 1e-12);
    }
}

TEST_CASE("linear grating is an involution") {
  auto h = random_hologram(8, 8, 13);
  auto twice = apply_linear_grating(apply_linear_grating(h));
  for (std::size_t i = 0; i < h.phase.size(); ++i) {
    // compare as phasors; wrapping may move -pi to pi representations
    auto d = std::polar(1.0, h.phase.data()[i]) - std::polar(1.0, twice.phase.data()[i]);
    CHECK(std::abs(d) <= 1e-12);
  }
}

TEST_CASE("linear grating kills the DC Fourier term of a uniform hologram") {
  PhaseHologram h;
  h.phase = RealGrid(8, 8, 0.9);
  h.pitch = kPitch;
  h.wavelength = kWl;
  auto g = apply_linear_grating(h);
  std::complex<double> dc = 0.0;
  for (const auto& v : g.phase) dc += std::polar(1.0, -v); // 8x8 DFT, DC bin
  CHECK(std::abs(dc) <= 1e-12);
}

TEST_CASE("reconstruction at the hologram plane is all ones") {
  auto h = random_hologram(16, 16, 19);
  auto planes = reconstruct_stack(h, {0.0});
  for (double v : planes[0]) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reconstruction conserves hologram energy") {
  auto h = random_hologram(32, 32, 23);
  double energy = wave::field_energy(hologram_field(h));
  auto planes = reconstruct_stack(h, {0.5e-3, 1e-3, 2e-3});
  for (const auto& plane : planes) {
    double sum = 0.0;
    for (double v : plane) sum += v;
    CHECK(std::abs(sum - energy) / energy <= 1e-6);
  }
}

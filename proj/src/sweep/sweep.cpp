#include "sweep/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "core/rng.hpp"

namespace hs::sweep {

namespace {

// Fixed 10-entry categorical palette for the hit-accumulation image.
constexpr double kPalette[10][3] = {
    {0.894, 0.102, 0.110}, {0.216, 0.494, 0.722}, {0.302, 0.686, 0.290},
    {0.596, 0.306, 0.639}, {1.000, 0.498, 0.000}, {1.000, 1.000, 0.200},
    {0.651, 0.337, 0.157}, {0.969, 0.506, 0.749}, {0.600, 0.600, 0.600},
    {0.090, 0.745, 0.812}};

double total_intensity(const ray::RetinalImage& image) {
  double sum = 0.0;
  for (double v : image.intensity) sum += v;
  return sum;
}

} // namespace

SweepAxis axis_from_string(const std::string& name) {
  if (name == "eyebox_xy" || name == "eyebox") return SweepAxis::eyebox_xy;
  if (name == "head_pan_tilt" || name == "orientation") return SweepAxis::head_pan_tilt;
  if (name == "head_translation_xy" || name == "head_translation")
    return SweepAxis::head_translation_xy;
  fail(errc::invalid_param, "unknown sweep axis: " + name);
}

std::string axis_to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::eyebox_xy: return "eyebox_xy";
    case SweepAxis::head_pan_tilt: return "head_pan_tilt";
    case SweepAxis::head_translation_xy: return "head_translation_xy";
  }
  return "?";
}

ray::Scene perturb_scene(const ray::Scene& scene, SweepAxis axis, double param_a,
                         double param_b) {
  ray::Scene s = scene;
  switch (axis) {
    case SweepAxis::eyebox_xy:
      s.eye.eyeball_center = s.eye.eyeball_center + Vec3{param_a, param_b, 0.0};
      break;
    case SweepAxis::head_pan_tilt: {
      // Pan about the vertical axis, tilt about the horizontal, both through
      // the eyeball rotation center.
      Mat3 rot = Mat3::rot_y(param_a) * Mat3::rot_x(param_b);
      Vec3 pivot = s.eye.eyeball_center;
      s.eye.orient = rot * s.eye.orient;
      s.hoe.center = pivot + rot * (s.hoe.center - pivot);
      s.hoe.orient = rot * s.hoe.orient;
      break;
    }
    case SweepAxis::head_translation_xy: {
      Vec3 shift{param_a, param_b, 0.0};
      s.eye.eyeball_center = s.eye.eyeball_center + shift;
      s.hoe.center = s.hoe.center + shift;
      break;
    }
  }
  return s;
}

double relative_brightness(const ray::RetinalImage& image, const ray::RetinalImage& baseline) {
  double base = total_intensity(baseline);
  if (!(base > 0.0)) fail(errc::numeric, "relative_brightness: zero baseline intensity");
  return total_intensity(image) / base;
}

SweepResult run_sweep(const ray::Scene& scene, const SweepConfig& config) {
  if (!(config.range_lo < config.range_hi))
    fail(errc::invalid_param, "sweep range_lo must be below range_hi");
  if (!(config.step > 0.0)) fail(errc::invalid_param, "sweep step must be positive");
  double cells = (config.range_hi - config.range_lo) / config.step;
  if (std::abs(cells - std::round(cells)) > 1e-9)
    fail(errc::invalid_param, "sweep step must divide the range exactly");
  auto n = static_cast<std::size_t>(std::llround(cells)) + 1;

  SweepResult result;
  result.axis = config.axis;
  result.unit = (config.axis == SweepAxis::head_pan_tilt) ? "deg" : "mm";
  result.brightness = RealGrid(n, n, 0.0);
  result.ticks.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    result.ticks[i] = config.range_lo + static_cast<double>(i) * config.step;

  auto render_cell = [&](std::size_t i, std::size_t j) {
    double pb = result.ticks[i]; // row index: tilt / y
    double pa = result.ticks[j]; // col index: pan / x
    ray::Scene cell_scene = perturb_scene(scene, config.axis, pa, pb);
    std::uint64_t cell_seed = derive_seed(config.seed, i * n + j);
    return ray::render_retinal_image(cell_scene, config.rays_per_point, cell_seed);
  };

  std::vector<ray::RenderOutput> outputs(n * n);
  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= n * n) return;
      outputs[idx] = render_cell(idx / n, idx % n);
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t center = (n - 1) / 2;
  const ray::RetinalImage& baseline = outputs[center * n + center].image;
  double base_total = total_intensity(baseline);
  if (!(base_total > 0.0))
    fail(errc::numeric, "run_sweep: default layout produced zero brightness");

  std::size_t px = baseline.intensity.rows();
  result.hit_accumulation = RgbImage{RealGrid(px, px, 0.0), RealGrid(px, px, 0.0),
                                     RealGrid(px, px, 0.0)};
  result.intensity_accumulation = RealGrid(px, px, 0.0);

  for (std::size_t idx = 0; idx < n * n; ++idx) {
    const ray::RetinalImage& img = outputs[idx].image;
    result.brightness(idx / n, idx % n) = total_intensity(img) / base_total;
    for (std::size_t p = 0; p < img.intensity.size(); ++p)
      result.intensity_accumulation.data()[p] += img.intensity.data()[p];
    if (idx % 10 == 0) {
      const double* color = kPalette[(idx / 10) % 10];
      for (std::size_t p = 0; p < img.intensity.size(); ++p) {
        if (img.hit_count.data()[p] == 0) continue;
        result.hit_accumulation.r.data()[p] += color[0];
        result.hit_accumulation.g.data()[p] += color[1];
        result.hit_accumulation.b.data()[p] += color[2];
      }
    }
  }
  return result;
}

AxisSpread compare_axis_robustness(const SweepResult& result) {
  auto spread = [](const std::vector<double>& line) {
    double lo = line[0], hi = line[0], sum = 0.0;
    for (double v : line) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    double mean = sum / static_cast<double>(line.size());
    return mean > 0.0 ? (hi - lo) / mean : 0.0;
  };
  return AxisSpread{spread(center_row_profile(result)), spread(center_column_profile(result))};
}

std::vector<double> center_row_profile(const SweepResult& result) {
  std::size_t n = result.brightness.rows(), center = (n - 1) / 2;
  std::vector<double> line(n);
  for (std::size_t j = 0; j < n; ++j) line[j] = result.brightness(center, j);
  return line;
}

std::vector<double> center_column_profile(const SweepResult& result) {
  std::size_t n = result.brightness.rows(), center = (n - 1) / 2;
  std::vector<double> line(n);
  for (std::size_t i = 0; i < n; ++i) line[i] = result.brightness(i, center);
  return line;
}

int count_local_maxima(const std::vector<double>& profile) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < profile.size(); ++i)
    if (profile[i] > profile[i - 1] && profile[i] > profile[i + 1]) ++count;
  return count;
}

} // namespace hs::sweep

#ifndef HS_SWEEP_SWEEP_HPP
#define HS_SWEEP_SWEEP_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "raytrace/raytrace.hpp"

namespace hs::sweep {

enum class SweepAxis { eyebox_xy, head_pan_tilt, head_translation_xy };

SweepAxis axis_from_string(const std::string& name);
std::string axis_to_string(SweepAxis axis);

struct SweepConfig {
  SweepAxis axis = SweepAxis::eyebox_xy;
  double range_lo = -4e-3; // meters, or radians for head_pan_tilt
  double range_hi = 4e-3;
  double step = 0.25e-3;
  int rays_per_point = 100;
  std::uint64_t seed = 0;
  int threads = 0; // 0 = hardware concurrency
};

struct RgbImage {
  RealGrid r, g, b;
};

struct SweepResult {
  RealGrid brightness;             // [tilt/y index][pan/x index], relative to center
  RgbImage hit_accumulation;       // every 10th viewpoint, categorical palette
  RealGrid intensity_accumulation; // all viewpoints
  std::vector<double> ticks;       // parameter value per grid index
  std::string unit;                // "mm" or "deg"
  SweepAxis axis = SweepAxis::eyebox_xy;
};

// Rigidly perturbs the scene per axis semantics: eyebox moves the eye only;
// head orientation rotates eye + HOE about the eyeball center; head
// translation moves eye + HOE together. The source stays fixed.
ray::Scene perturb_scene(const ray::Scene& scene, SweepAxis axis, double param_a,
                         double param_b);

SweepResult run_sweep(const ray::Scene& scene, const SweepConfig& config);

double relative_brightness(const ray::RetinalImage& image, const ray::RetinalImage& baseline);

struct AxisSpread {
  double along_a = 0.0; // pan / x direction (center row)
  double along_b = 0.0; // tilt / y direction (center column)
};

// (max - min)/mean along the center row/column of the brightness map.
AxisSpread compare_axis_robustness(const SweepResult& result);

int count_local_maxima(const std::vector<double>& profile);

// Brightness profile through the center along the tilt/y direction.
std::vector<double> center_column_profile(const SweepResult& result);
std::vector<double> center_row_profile(const SweepResult& result);

} // namespace hs::sweep

#endif

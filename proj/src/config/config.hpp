#ifndef HS_CONFIG_CONFIG_HPP
#define HS_CONFIG_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hs::cfg {

// All physical quantities carry explicit units in their key names. Defaults
// describe the default simulated layout; unknown keys are rejected.

struct OpticsConfig {
  double wavelength_nm = 532.0;
  double n0 = 1.5;
  double n1 = 0.04;
  double thickness_um = 30.0;
  double hoe_focal_mm = 150.0;
  double hoe_tilt_deg = 35.0;
  double hoe_aperture_mm = 25.0;
  double eyeball_distance_mm = 30.0;
  double pupil_diameter_mm = 3.0;
  double eye_focal_mm = 17.0;
  double retina_distance_mm = 17.0;
  double pupil_offset_mm = 13.0;
  int retina_pixels = 201;
  double retina_halfspan_mm = 3.0;
  double source_pitch_um = 16.2;
  int source_image_px = 801;
  int source_grid_points = 17;
  int rays_per_point = 100;
};

struct CghConfig {
  std::string input;       // HBGF real grid; empty selects a procedural image
  std::string depth_input; // HBGF real grid; empty selects a linear ramp
  int rows = 256;
  int cols = 256;
  double pitch_um = 3.74;
  int n_planes = 6;
  double base_distance_mm = 3.0;
  double separation_mm = 1.0;
  int iterations = 200;
  double step_size = 0.1;
  int loss_report_every = 1;
  double a_max = 1.0;
  bool apply_grating = false;
  std::vector<double> distances_mm; // reconstruct targets; empty = plane grid
};

struct KogelnikConfig {
  double theta_min_deg = 0.0;
  double theta_max_deg = 70.0;
  double theta_step_deg = 0.5;
};

struct SweepSection {
  std::string axis = "eyebox_xy";
  double range_mm = 4.0;
  double step_mm = 0.25;
  double range_deg = 10.0;
  double step_deg = 0.5;
};

struct OutputConfig {
  std::string directory = "out";
  bool png = true;
  bool hbgf = true;
  bool csv = true;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int threads = 0;
  OpticsConfig optics;
  CghConfig cgh;
  KogelnikConfig kogelnik;
  SweepSection sweep;
  OutputConfig output;
};

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical (key-sorted) JSON; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// FNV-1a hash of the canonical serialization, as 16 hex chars. Embedded in
// output filenames so re-runs of the same config overwrite the same files.
std::string config_hash(const ExperimentConfig& config);

} // namespace hs::cfg

#endif

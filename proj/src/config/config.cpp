#include "config/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace hs::cfg {

namespace {

using nlohmann::json;

// Reads known keys from a section object and rejects anything else.
class SectionReader {
public:
  SectionReader(const json& j, std::string name) : j_(j), name_(std::move(name)) {}

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      fail(errc::config, "config key '" + name_ + "." + key + "' has the wrong type");
    }
  }

  void allow(const char* key) { seen_.insert(key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        fail(errc::config, "unknown config key '" + name_ + "." + it.key() + "'");
  }

private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

const json& section(const json& root, const char* key, const json& empty) {
  if (!root.contains(key)) return empty;
  if (!root.at(key).is_object()) fail(errc::config, std::string("config section '") + key + "' must be an object");
  return root.at(key);
}

void require_positive(double v, const char* key) {
  if (!(v > 0.0)) fail(errc::config, std::string("config key '") + key + "' must be positive");
}

void require_positive(int v, const char* key) {
  if (v < 1) fail(errc::config, std::string("config key '") + key + "' must be at least 1");
}

void validate(const ExperimentConfig& c) {
  require_positive(c.optics.wavelength_nm, "optics.wavelength_nm");
  require_positive(c.optics.n0, "optics.n0");
  if (!(c.optics.n1 > 0.0) || !(c.optics.n1 < c.optics.n0))
    fail(errc::config, "config key 'optics.n1' must be in (0, n0)");
  require_positive(c.optics.thickness_um, "optics.thickness_um");
  require_positive(c.optics.hoe_focal_mm, "optics.hoe_focal_mm");
  require_positive(c.optics.hoe_aperture_mm, "optics.hoe_aperture_mm");
  require_positive(c.optics.eyeball_distance_mm, "optics.eyeball_distance_mm");
  if (c.optics.pupil_diameter_mm < 0.0)
    fail(errc::config, "config key 'optics.pupil_diameter_mm' must be non-negative");
  require_positive(c.optics.eye_focal_mm, "optics.eye_focal_mm");
  require_positive(c.optics.retina_distance_mm, "optics.retina_distance_mm");
  require_positive(c.optics.retina_pixels, "optics.retina_pixels");
  require_positive(c.optics.retina_halfspan_mm, "optics.retina_halfspan_mm");
  require_positive(c.optics.source_pitch_um, "optics.source_pitch_um");
  require_positive(c.optics.source_image_px, "optics.source_image_px");
  require_positive(c.optics.source_grid_points, "optics.source_grid_points");
  require_positive(c.optics.rays_per_point, "optics.rays_per_point");

  if (c.cgh.rows < 2 || c.cgh.cols < 2)
    fail(errc::config, "config keys 'cgh.rows'/'cgh.cols' must be at least 2");
  require_positive(c.cgh.pitch_um, "cgh.pitch_um");
  require_positive(c.cgh.n_planes, "cgh.n_planes");
  require_positive(c.cgh.separation_mm, "cgh.separation_mm");
  require_positive(c.cgh.iterations, "cgh.iterations");
  require_positive(c.cgh.step_size, "cgh.step_size");
  require_positive(c.cgh.loss_report_every, "cgh.loss_report_every");
  require_positive(c.cgh.a_max, "cgh.a_max");

  if (!(c.kogelnik.theta_min_deg < c.kogelnik.theta_max_deg))
    fail(errc::config, "config key 'kogelnik.theta_min_deg' must be below theta_max_deg");
  require_positive(c.kogelnik.theta_step_deg, "kogelnik.theta_step_deg");

  require_positive(c.sweep.range_mm, "sweep.range_mm");
  require_positive(c.sweep.step_mm, "sweep.step_mm");
  require_positive(c.sweep.range_deg, "sweep.range_deg");
  require_positive(c.sweep.step_deg, "sweep.step_deg");
  if (c.sweep.axis != "eyebox_xy" && c.sweep.axis != "head_pan_tilt" &&
      c.sweep.axis != "head_translation_xy")
    fail(errc::config, "config key 'sweep.axis' must be one of eyebox_xy, head_pan_tilt, "
                       "head_translation_xy");

  if (c.threads < 0) fail(errc::config, "config key 'threads' must be non-negative");
  if (c.output.directory.empty())
    fail(errc::config, "config key 'output.directory' must not be empty");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(errc::config, std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) fail(errc::config, "config root must be a JSON object");

  ExperimentConfig c;
  static const json empty = json::object();

  {
    SectionReader top(root, "");
    std::uint64_t seed = c.seed;
    top.get("seed", seed);
    c.seed = seed;
    top.get("threads", c.threads);
    for (const char* key : {"optics", "cgh", "kogelnik", "sweep", "output"}) top.allow(key);
    top.finish();
  }

  {
    SectionReader r(section(root, "optics", empty), "optics");
    r.get("wavelength_nm", c.optics.wavelength_nm);
    r.get("n0", c.optics.n0);
    r.get("n1", c.optics.n1);
    r.get("thickness_um", c.optics.thickness_um);
    r.get("hoe_focal_mm", c.optics.hoe_focal_mm);
    r.get("hoe_tilt_deg", c.optics.hoe_tilt_deg);
    r.get("hoe_aperture_mm", c.optics.hoe_aperture_mm);
    r.get("eyeball_distance_mm", c.optics.eyeball_distance_mm);
    r.get("pupil_diameter_mm", c.optics.pupil_diameter_mm);
    r.get("eye_focal_mm", c.optics.eye_focal_mm);
    r.get("retina_distance_mm", c.optics.retina_distance_mm);
    r.get("pupil_offset_mm", c.optics.pupil_offset_mm);
    r.get("retina_pixels", c.optics.retina_pixels);
    r.get("retina_halfspan_mm", c.optics.retina_halfspan_mm);
    r.get("source_pitch_um", c.optics.source_pitch_um);
    r.get("source_image_px", c.optics.source_image_px);
    r.get("source_grid_points", c.optics.source_grid_points);
    r.get("rays_per_point", c.optics.rays_per_point);
    r.finish();
  }

  {
    SectionReader r(section(root, "cgh", empty), "cgh");
    r.get("input", c.cgh.input);
    r.get("depth_input", c.cgh.depth_input);
    r.get("rows", c.cgh.rows);
    r.get("cols", c.cgh.cols);
    r.get("pitch_um", c.cgh.pitch_um);
    r.get("n_planes", c.cgh.n_planes);
    r.get("base_distance_mm", c.cgh.base_distance_mm);
    r.get("separation_mm", c.cgh.separation_mm);
    r.get("iterations", c.cgh.iterations);
    r.get("step_size", c.cgh.step_size);
    r.get("loss_report_every", c.cgh.loss_report_every);
    r.get("a_max", c.cgh.a_max);
    r.get("apply_grating", c.cgh.apply_grating);
    r.get("distances_mm", c.cgh.distances_mm);
    r.finish();
  }

  {
    SectionReader r(section(root, "kogelnik", empty), "kogelnik");
    r.get("theta_min_deg", c.kogelnik.theta_min_deg);
    r.get("theta_max_deg", c.kogelnik.theta_max_deg);
    r.get("theta_step_deg", c.kogelnik.theta_step_deg);
    r.finish();
  }

  {
    SectionReader r(section(root, "sweep", empty), "sweep");
    r.get("axis", c.sweep.axis);
    r.get("range_mm", c.sweep.range_mm);
    r.get("step_mm", c.sweep.step_mm);
    r.get("range_deg", c.sweep.range_deg);
    r.get("step_deg", c.sweep.step_deg);
    r.finish();
  }

  {
    SectionReader r(section(root, "output", empty), "output");
    r.get("directory", c.output.directory);
    r.get("png", c.output.png);
    r.get("hbgf", c.output.hbgf);
    r.get("csv", c.output.csv);
    r.finish();
  }

  validate(c);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(errc::io, "cannot open config file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  json root;
  root["seed"] = c.seed;
  root["threads"] = c.threads;
  json& o = root["optics"];
  o["wavelength_nm"] = c.optics.wavelength_nm;
  o["n0"] = c.optics.n0;
  o["n1"] = c.optics.n1;
  o["thickness_um"] = c.optics.thickness_um;
  o["hoe_focal_mm"] = c.optics.hoe_focal_mm;
  o["hoe_tilt_deg"] = c.optics.hoe_tilt_deg;
  o["hoe_aperture_mm"] = c.optics.hoe_aperture_mm;
  o["eyeball_distance_mm"] = c.optics.eyeball_distance_mm;
  o["pupil_diameter_mm"] = c.optics.pupil_diameter_mm;
  o["eye_focal_mm"] = c.optics.eye_focal_mm;
  o["retina_distance_mm"] = c.optics.retina_distance_mm;
  o["pupil_offset_mm"] = c.optics.pupil_offset_mm;
  o["retina_pixels"] = c.optics.retina_pixels;
  o["retina_halfspan_mm"] = c.optics.retina_halfspan_mm;
  o["source_pitch_um"] = c.optics.source_pitch_um;
  o["source_image_px"] = c.optics.source_image_px;
  o["source_grid_points"] = c.optics.source_grid_points;
  o["rays_per_point"] = c.optics.rays_per_point;
  json& g = root["cgh"];
  g["input"] = c.cgh.input;
  g["depth_input"] = c.cgh.depth_input;
  g["rows"] = c.cgh.rows;
  g["cols"] = c.cgh.cols;
  g["pitch_um"] = c.cgh.pitch_um;
  g["n_planes"] = c.cgh.n_planes;
  g["base_distance_mm"] = c.cgh.base_distance_mm;
  g["separation_mm"] = c.cgh.separation_mm;
  g["iterations"] = c.cgh.iterations;
  g["step_size"] = c.cgh.step_size;
  g["loss_report_every"] = c.cgh.loss_report_every;
  g["a_max"] = c.cgh.a_max;
  g["apply_grating"] = c.cgh.apply_grating;
  g["distances_mm"] = c.cgh.distances_mm;
  json& k = root["kogelnik"];
  k["theta_min_deg"] = c.kogelnik.theta_min_deg;
  k["theta_max_deg"] = c.kogelnik.theta_max_deg;
  k["theta_step_deg"] = c.kogelnik.theta_step_deg;
  json& s = root["sweep"];
  s["axis"] = c.sweep.axis;
  s["range_mm"] = c.sweep.range_mm;
  s["step_mm"] = c.sweep.step_mm;
  s["range_deg"] = c.sweep.range_deg;
  s["step_deg"] = c.sweep.step_deg;
  json& out = root["output"];
  out["directory"] = c.output.directory;
  out["png"] = c.output.png;
  out["hbgf"] = c.output.hbgf;
  out["csv"] = c.output.csv;
  return root.dump(2);
}

std::string config_hash(const ExperimentConfig& config) {
  std::string text = serialize_config(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace hs::cfg

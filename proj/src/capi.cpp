#include "holosim.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "config/config.hpp"
#include "core/errors.hpp"
#include "kogelnik/kogelnik.hpp"
#include "raytrace/raytrace.hpp"
#include "runner/runner.hpp"

struct hs_config {
  hs::cfg::ExperimentConfig value;
};

namespace {

thread_local std::string g_last_error;

hs_status status_from(hs::errc code) {
  switch (code) {
    case hs::errc::invalid_param: return HS_ERR_INVALID_PARAM;
    case hs::errc::incompatible_grid: return HS_ERR_INCOMPATIBLE_GRID;
    case hs::errc::config: return HS_ERR_CONFIG;
    case hs::errc::io: return HS_ERR_IO;
    case hs::errc::numeric: return HS_ERR_NUMERIC;
    case hs::errc::diverged: return HS_ERR_DIVERGED;
    case hs::errc::unknown_command: return HS_ERR_UNKNOWN_COMMAND;
    case hs::errc::internal: return HS_ERR_INTERNAL;
  }
  return HS_ERR_INTERNAL;
}

template <typename Fn>
hs_status guarded(Fn&& fn) {
  try {
    fn();
    return HS_OK;
  } catch (const hs::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HS_ERR_INTERNAL;
  }
}

hs_status require(bool cond, const char* msg) {
  if (cond) return HS_OK;
  g_last_error = msg;
  return HS_ERR_INVALID_PARAM;
}

void copy_out(const std::string& text, char* buf, size_t cap) {
  if (!buf || cap == 0) return;
  size_t n = std::min(text.size(), cap - 1);
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

} // namespace

extern "C" {

const char* hs_version(void) { return "0.1.0"; }

const char* hs_last_error(void) { return g_last_error.c_str(); }

hs_status hs_config_load_json(const char* json_text, hs_config** out) {
  if (hs_status s = require(json_text && out, "null argument"); s != HS_OK) return s;
  return guarded([&] { *out = new hs_config{hs::cfg::parse_config_text(json_text)}; });
}

hs_status hs_config_load_file(const char* path, hs_config** out) {
  if (hs_status s = require(path && out, "null argument"); s != HS_OK) return s;
  return guarded([&] { *out = new hs_config{hs::cfg::parse_config_file(path)}; });
}

void hs_config_free(hs_config* config) { delete config; }

hs_status hs_config_set_seed(hs_config* config, uint64_t seed) {
  if (hs_status s = require(config != nullptr, "null config"); s != HS_OK) return s;
  config->value.seed = seed;
  return HS_OK;
}

hs_status hs_config_set_threads(hs_config* config, int threads) {
  if (hs_status s = require(config != nullptr, "null config"); s != HS_OK) return s;
  if (hs_status s = require(threads >= 0, "threads must be non-negative"); s != HS_OK)
    return s;
  config->value.threads = threads;
  return HS_OK;
}

hs_status hs_config_set_output_dir(hs_config* config, const char* directory) {
  if (hs_status s = require(config && directory && directory[0], "null or empty directory");
      s != HS_OK)
    return s;
  config->value.output.directory = directory;
  return HS_OK;
}

hs_status hs_config_to_json(const hs_config* config, char* buf, size_t cap, size_t* needed) {
  if (hs_status s = require(config != nullptr, "null config"); s != HS_OK) return s;
  return guarded([&] {
    std::string text = hs::cfg::serialize_config(config->value);
    if (needed) *needed = text.size() + 1;
    copy_out(text, buf, cap);
  });
}

hs_status hs_run(const hs_config* config, const char* command, char* summary_buf,
                 size_t summary_cap) {
  if (hs_status s = require(config && command, "null argument"); s != HS_OK) return s;
  return guarded([&] {
    auto result = hs::run::run_command(command, config->value);
    copy_out(result.summary, summary_buf, summary_cap);
  });
}

hs_status hs_efficiency_special(double theta_rad, double wavelength_m, double n1,
                                double thickness_m, double* eta) {
  if (hs_status s = require(eta != nullptr, "null output"); s != HS_OK) return s;
  return guarded([&] {
    *eta = hs::kog::efficiency_special_case(theta_rad, wavelength_m, n1, thickness_m);
  });
}

hs_status hs_efficiency_pair(double theta_r_rad, double theta_s_rad, double wavelength_m,
                             double n0, double n1, double thickness_m, double* eta) {
  if (hs_status s = require(eta != nullptr, "null output"); s != HS_OK) return s;
  return guarded([&] {
    hs::Vec3 dir_r{std::sin(theta_r_rad), 0.0, std::cos(theta_r_rad)};
    hs::Vec3 dir_s{-std::sin(theta_s_rad), 0.0, std::cos(theta_s_rad)};
    auto g = hs::kog::record_grating(dir_r, dir_s, wavelength_m, n0, n1, thickness_m,
                                     hs::Vec3{0.0, 0.0, 1.0});
    auto r = hs::kog::kvcm_replay(g, dir_r);
    *eta = hs::kog::diffraction_efficiency(g, r);
  });
}

hs_status hs_diffraction_cone_full_angle(double wavelength_m, double pitch_m,
                                         double* radians) {
  if (hs_status s = require(radians != nullptr, "null output"); s != HS_OK) return s;
  if (hs_status s = require(wavelength_m > 0 && pitch_m > 0,
                            "wavelength and pitch must be positive");
      s != HS_OK)
    return s;
  if (hs_status s = require(1.22 * wavelength_m / pitch_m <= 1.0,
                            "diffraction cone undefined: 1.22*wavelength exceeds pitch");
      s != HS_OK)
    return s;
  *radians = hs::ray::diffraction_cone_full_angle(wavelength_m, pitch_m);
  return HS_OK;
}

} // extern "C"

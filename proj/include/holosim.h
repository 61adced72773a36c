/*
 * holosim — holographic display simulation toolkit, C API.
 *
 * All entry points return hs_status; HS_OK is 0. On failure a thread-local
 * error message is available through hs_last_error(). Handles are opaque and
 * must be released with their matching free function.
 */

#ifndef HOLOSIM_H
#define HOLOSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_INVALID_PARAM = 1,
  HS_ERR_INCOMPATIBLE_GRID = 2,
  HS_ERR_CONFIG = 3,
  HS_ERR_IO = 4,
  HS_ERR_NUMERIC = 5,
  HS_ERR_DIVERGED = 6,
  HS_ERR_UNKNOWN_COMMAND = 7,
  HS_ERR_INTERNAL = 8
} hs_status;

typedef struct hs_config hs_config;

const char* hs_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* hs_last_error(void);

/* Configuration -------------------------------------------------------- */

/* Parses and validates a JSON experiment config. "{}" yields the defaults. */
hs_status hs_config_load_json(const char* json_text, hs_config** out);
hs_status hs_config_load_file(const char* path, hs_config** out);
void hs_config_free(hs_config* config);

hs_status hs_config_set_seed(hs_config* config, uint64_t seed);
hs_status hs_config_set_threads(hs_config* config, int threads);
hs_status hs_config_set_output_dir(hs_config* config, const char* directory);

/* Canonical JSON serialization. Writes up to cap bytes (including the NUL
 * terminator) into buf and stores the full length in *needed. */
hs_status hs_config_to_json(const hs_config* config, char* buf, size_t cap, size_t* needed);

/* Experiments ----------------------------------------------------------- */

/* Runs one of: efficiency-map, optimize-hologram, encode, reconstruct,
 * render-retina, sweep. Writes the declared artifacts into the config's
 * output directory and a one-line summary into summary_buf (if non-NULL). */
hs_status hs_run(const hs_config* config, const char* command, char* summary_buf,
                 size_t summary_cap);

/* Direct physics entry points ------------------------------------------ */

/* Unslanted Bragg-matched diffraction efficiency
 * sin^2(pi*thickness*n1/(wavelength*cos(theta))). */
hs_status hs_efficiency_special(double theta_rad, double wavelength_m, double n1,
                                double thickness_m, double* eta);

/* Full coupled-wave efficiency for an unslanted transmission grating recorded
 * with in-medium angles theta_r/theta_s (radians, x-z plane) and replayed
 * Bragg-matched. */
hs_status hs_efficiency_pair(double theta_r_rad, double theta_s_rad, double wavelength_m,
                             double n0, double n1, double thickness_m, double* eta);

/* Full diffraction cone angle 2*asin(1.22*wavelength/pitch), radians. */
hs_status hs_diffraction_cone_full_angle(double wavelength_m, double pitch_m,
                                         double* radians);

#ifdef __cplusplus
}
#endif

#endif /* HOLOSIM_H */

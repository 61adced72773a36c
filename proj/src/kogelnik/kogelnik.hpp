#ifndef HS_KOGELNIK_KOGELNIK_HPP
#define HS_KOGELNIK_KOGELNIK_HPP

#include "core/grid.hpp"
#include "core/vec3.hpp"

namespace hs::kog {

// A recorded volume grating. All wave vectors are defined inside the medium;
// boundary refraction is handled by the ray tracer, not here.
struct GratingVectors {
  Vec3 n_r;            // reference-beam wave vector, rad/m
  Vec3 n_s;            // signal-beam wave vector, rad/m
  Vec3 k;              // grating vector, n_s - n_r
  double beta = 0.0;   // 2*pi*n0/lambda
  double n0 = 0.0;     // average refractive index
  double n1 = 0.0;     // index modulation
  double d = 0.0;      // grating thickness, m
  double lambda = 0.0; // vacuum wavelength, m
  Vec3 surface_normal; // unit
  bool degenerate = false; // k == 0 (reference and signal collinear)
};

struct DiffractionResult {
  Vec3 n_out;
  Vec3 delta_q; // momentum correction along the surface normal
  double eta = -1.0; // unset until diffraction_efficiency
  double nu = 0.0;
  double xi = 0.0;
  double c_r = 0.0; // obliquity factors
  double c_s = 0.0;
};

GratingVectors record_grating(const Vec3& dir_r, const Vec3& dir_s, double lambda, double n0,
                              double n1, double d, const Vec3& surface_normal);

// K-vector closure replay: n_out = n_in + k + delta_q with delta_q along the
// surface normal restoring |n_out| = beta. Directions only; eta left unset.
DiffractionResult kvcm_replay(const GratingVectors& g, const Vec3& dir_in);

// Coupled-wave efficiency eta = [nu*sinc(sqrt(nu^2+xi^2))]^2.
double diffraction_efficiency(const GratingVectors& g, DiffractionResult& r);

// Unslanted Bragg-matched special case: eta = sin^2(pi*d*n1/(lambda*cos(theta))).
double efficiency_special_case(double theta, double lambda, double n1, double d);

// sin(x)/x with a series fallback near zero.
double sinc(double x);

// Snell helper: in-medium angle for a given in-air incidence angle.
double medium_angle(double air_angle, double n0);

struct MaterialParams {
  double lambda = 532e-9;
  double n0 = 1.5;
  double n1 = 0.04;
  double d = 30e-6;
};

// Bragg-matched replay efficiency for every in-medium recording angle pair
// (theta_r, theta_s) in the x-z plane, transmission geometry. Entry [i][j]
// corresponds to theta_r = theta_min + i*step, theta_s = theta_min + j*step.
RealGrid efficiency_map(double theta_min_deg, double theta_max_deg, double step_deg,
                        const MaterialParams& mat);

} // namespace hs::kog

#endif

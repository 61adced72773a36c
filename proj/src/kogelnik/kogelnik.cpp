#include "kogelnik/kogelnik.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hs::kog {

namespace {
constexpr double kPi = std::numbers::pi;

void check_unit(const Vec3& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-9)
    fail(errc::invalid_param, std::string(name) + " must be unit length");
}
} // namespace

double sinc(double x) {
  double ax = std::abs(x);
  if (ax < 1e-6) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double medium_angle(double air_angle, double n0) {
  return std::asin(std::sin(air_angle) / n0);
}

GratingVectors record_grating(const Vec3& dir_r, const Vec3& dir_s, double lambda, double n0,
                              double n1, double d, const Vec3& surface_normal) {
  check_unit(dir_r, "dir_r");
  check_unit(dir_s, "dir_s");
  check_unit(surface_normal, "surface_normal");
  if (!(lambda > 0.0) || !(n0 > 0.0) || !(d > 0.0))
    fail(errc::invalid_param, "material parameters must be positive");
  if (!(n1 > 0.0) || !(n1 < n0))
    fail(errc::invalid_param, "index modulation must satisfy 0 < n1 < n0");

  GratingVectors g;
  g.beta = 2.0 * kPi * n0 / lambda;
  g.n_r = g.beta * dir_r;
  g.n_s = g.beta * dir_s;
  g.k = g.n_s - g.n_r;
  g.n0 = n0;
  g.n1 = n1;
  g.d = d;
  g.lambda = lambda;
  g.surface_normal = surface_normal;
  g.degenerate = g.k.norm() <= 1e-9 * g.beta;
  return g;
}

DiffractionResult kvcm_replay(const GratingVectors& g, const Vec3& dir_in) {
  check_unit(dir_in, "dir_in");

  Vec3 n_in = g.beta * dir_in;
  Vec3 n_prime = n_in + g.k;

  // Solve |n_prime + s*normal| = beta for s; keep the root of smaller |s|,
  // the minimal momentum correction (continuous at Bragg match).
  double b = n_prime.dot(g.surface_normal);
  double c = n_prime.dot(n_prime) - g.beta * g.beta;
  double disc = b * b - c;
  if (disc < 0.0)
    fail(errc::numeric, "kvcm_replay: closure impossible (no real root)");
  double sq = std::sqrt(disc);
  double s;
  if (b >= 0.0) {
    double r1 = -(b + sq);
    double r2 = (r1 != 0.0) ? c / r1 : 0.0;
    s = (std::abs(r1) < std::abs(r2)) ? r1 : r2;
  } else {
    double r1 = -(b - sq);
    double r2 = (r1 != 0.0) ? c / r1 : 0.0;
    s = (std::abs(r1) < std::abs(r2)) ? r1 : r2;
  }

  DiffractionResult r;
  r.delta_q = s * g.surface_normal;
  r.n_out = n_prime + r.delta_q;

  Vec3 q = g.beta * g.surface_normal;
  r.c_r = n_in.dot(q) / (g.beta * g.beta);
  r.c_s = r.n_out.dot(q) / (g.beta * g.beta);
  if (r.c_s <= 0.0)
    fail(errc::numeric, "kvcm_replay: grazing or backward diffraction (c_S <= 0)");
  r.xi = std::abs(s) * g.d / (2.0 * r.c_s);
  return r;
}

double diffraction_efficiency(const GratingVectors& g, DiffractionResult& r) {
  if (!(r.c_r > 0.0) || !(r.c_s > 0.0))
    fail(errc::invalid_param, "diffraction_efficiency: obliquity factors must be positive");
  r.nu = kPi * g.n1 * g.d / (g.lambda * std::sqrt(r.c_r * r.c_s));
  double root = std::sqrt(r.nu * r.nu + r.xi * r.xi);
  double amp = r.nu * sinc(root);
  double eta = amp * amp;
  if (eta < 0.0 || eta > 1.0 + 1e-12)
    fail(errc::numeric, "diffraction_efficiency: eta = " + std::to_string(eta) +
                            " outside [0, 1]");
  r.eta = std::min(eta, 1.0);
  return r.eta;
}

double efficiency_special_case(double theta, double lambda, double n1, double d) {
  double ct = std::cos(theta);
  if (!(ct > 0.0))
    fail(errc::invalid_param, "efficiency_special_case: cos(theta) must be positive");
  double s = std::sin(kPi * d * n1 / (lambda * ct));
  return s * s;
}

RealGrid efficiency_map(double theta_min_deg, double theta_max_deg, double step_deg,
                        const MaterialParams& mat) {
  if (!(theta_min_deg < theta_max_deg))
    fail(errc::invalid_param, "efficiency_map: theta_min must be below theta_max");
  if (!(step_deg > 0.0)) fail(errc::invalid_param, "efficiency_map: step must be positive");

  auto n = static_cast<std::size_t>(std::floor((theta_max_deg - theta_min_deg) / step_deg + 1e-9)) + 1;
  RealGrid map(n, n);
  Vec3 normal{0.0, 0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    double theta_r = (theta_min_deg + static_cast<double>(i) * step_deg) * kPi / 180.0;
    Vec3 dir_r{std::sin(theta_r), 0.0, std::cos(theta_r)};
    for (std::size_t j = 0; j < n; ++j) {
      double theta_s = (theta_min_deg + static_cast<double>(j) * step_deg) * kPi / 180.0;
      Vec3 dir_s{-std::sin(theta_s), 0.0, std::cos(theta_s)};
      GratingVectors g = record_grating(dir_r, dir_s, mat.lambda, mat.n0, mat.n1, mat.d, normal);
      DiffractionResult r = kvcm_replay(g, dir_r);
      map(i, j) = diffraction_efficiency(g, r);
    }
  }
  return map;
}

} // namespace hs::kog

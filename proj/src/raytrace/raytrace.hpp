#ifndef HS_RAYTRACE_RAYTRACE_HPP
#define HS_RAYTRACE_RAYTRACE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "core/grid.hpp"
#include "core/vec3.hpp"
#include "kogelnik/kogelnik.hpp"

namespace hs::ray {

struct Ray {
  Vec3 origin;     // meters, world frame
  Vec3 direction;  // unit
  double weight = 1.0;
  double wavelength = 532e-9;
};

// Volume-hologram lens element. The local frame has +z toward the source
// side; the eye sits on local -z. The recorded grating is fixed in this
// frame: reference = ray from the design focal point (focal_length along the
// elevated design axis; the projector sits above the line of sight) to the
// hit point, signal = plane wave along -z.
struct HoeElement {
  Vec3 center;      // world
  Mat3 orient;      // local -> world
  double aperture_radius = 25e-3;
  double focal_length = 150e-3;
  double design_tilt = 35.0 * 3.14159265358979323846 / 180.0; // elevation, radians
  double n0 = 1.5;
  double n1 = 0.04;
  double thickness = 30e-6;
  double design_wavelength = 532e-9;

  Vec3 focal_point_local() const {
    return {0.0, focal_length * std::sin(design_tilt), focal_length * std::cos(design_tilt)};
  }
};

// Reduced thin-lens camera eye: pupil stop at the lens plane, retina plane
// retina_distance behind it, lens focused at infinity. The pupil plane sits
// pupil_offset in front of the eyeball rotation center.
struct EyeModel {
  Vec3 eyeball_center; // world
  Mat3 orient;         // local -> world; local +z looks toward the HOE
  double pupil_diameter = 3e-3;
  double lens_focal = 17e-3;
  double retina_distance = 17e-3;
  double pupil_offset = 13e-3;
  int retina_px = 201;
  double retina_halfspan = 3e-3;
};

// Point-grid virtual image source, fixed in the world frame.
struct SourceGrid {
  Vec3 center;             // world
  Vec3 axis_u, axis_v;     // in-plane unit basis
  double pixel_pitch = 16.2e-6;
  int image_rows = 801, image_cols = 801;
  int grid_points = 17;    // lit points per axis, uniformly spanning
  double cone_half_angle = 0.0; // asin(1.22*lambda/pitch)
  double wavelength = 532e-9;

  std::vector<Vec3> lit_point_positions() const;
};

struct RetinalImage {
  RealGrid intensity;
  Grid<std::uint32_t> hit_count;
  double pixel_pitch = 0.0; // meters on the retina
};

struct CullStat {
  std::uint64_t count = 0;
  double weight = 0.0;
};

struct TraceDiagnostics {
  std::uint64_t emitted = 0;
  CullStat miss_aperture;
  CullStat off_shell;
  CullStat grazing;
  CullStat zero_order; // undiffracted fraction shed at the HOE
  CullStat exit_tir;
  CullStat miss_pupil;
  CullStat miss_retina;
  std::uint64_t hits = 0;

  double discarded_weight() const {
    return miss_aperture.weight + off_shell.weight + grazing.weight + zero_order.weight +
           exit_tir.weight + miss_pupil.weight + miss_retina.weight;
  }
};

struct Scene {
  HoeElement hoe;
  EyeModel eye;
  SourceGrid source;
};

// Default layout: HOE at the world origin facing +z toward the source,
// eyeball center 30 mm behind it, source focal_length away along the elevated
// design axis.
Scene make_default_scene(double wavelength, double n0, double n1, double thickness,
                         double focal_length, double design_tilt, double aperture_radius,
                         double eyeball_distance, double pupil_diameter, double lens_focal,
                         double retina_distance, double pupil_offset, int retina_px,
                         double retina_halfspan, double source_pitch, int source_image_px,
                         int source_grid_points);

double diffraction_cone_full_angle(double wavelength, double pitch);

std::vector<Ray> emit_rays(const Vec3& point, const Vec3& central_dir, double cone_half_angle,
                           int count, std::uint64_t seed, double wavelength);

// The grating recorded at a hit point (HOE local coordinates), with all wave
// vectors inside the medium.
kog::GratingVectors local_grating(const HoeElement& hoe, const Vec3& hit_local);

// Intersect, refract into the medium, replay the local grating, refract out;
// weight is multiplied by the diffraction efficiency. Zero-order light is
// discarded. Returns nothing when the ray misses or is culled (diagnostics
// updated when provided).
std::optional<Ray> hoe_deflect(const HoeElement& hoe, const Ray& ray,
                               TraceDiagnostics* diag = nullptr);

// Pupil cull, thin-lens refraction, retina intersection; accumulates into the
// image when the ray lands inside the retina grid.
void trace_into_eye(const EyeModel& eye, const Ray& ray, RetinalImage& image,
                    TraceDiagnostics& diag);

struct RenderOutput {
  RetinalImage image;
  TraceDiagnostics diag;
};

RenderOutput render_retinal_image(const Scene& scene, int rays_per_point, std::uint64_t seed);

// Snell refraction of a unit direction at a plane interface; normal must
// oppose the incoming direction. Empty on total internal reflection.
std::optional<Vec3> refract(const Vec3& dir, const Vec3& normal, double eta_ratio);

} // namespace hs::ray

#endif

#include "raytrace/raytrace.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "core/rng.hpp"

namespace hs::ray {

namespace {
constexpr double kPi = std::numbers::pi;

// Orthonormal basis with w as the third axis.
void basis_around(const Vec3& w, Vec3& u, Vec3& v) {
  Vec3 helper = std::abs(w.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  u = helper.cross(w).normalized();
  v = w.cross(u);
}
} // namespace

std::optional<Vec3> refract(const Vec3& dir, const Vec3& normal, double eta_ratio) {
  double cosi = -dir.dot(normal);
  double sin2t = eta_ratio * eta_ratio * (1.0 - cosi * cosi);
  if (sin2t > 1.0) return std::nullopt;
  double cost = std::sqrt(1.0 - sin2t);
  return (eta_ratio * dir + (eta_ratio * cosi - cost) * normal).normalized();
}

double diffraction_cone_full_angle(double wavelength, double pitch) {
  return 2.0 * std::asin(1.22 * wavelength / pitch);
}

std::vector<Vec3> SourceGrid::lit_point_positions() const {
  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(grid_points) * grid_points);
  double half_r = 0.5 * (image_rows - 1), half_c = 0.5 * (image_cols - 1);
  for (int i = 0; i < grid_points; ++i) {
    for (int j = 0; j < grid_points; ++j) {
      double pr = (grid_points == 1) ? half_r
                                     : static_cast<double>(i) * (image_rows - 1) /
                                           (grid_points - 1);
      double pc = (grid_points == 1) ? half_c
                                     : static_cast<double>(j) * (image_cols - 1) /
                                           (grid_points - 1);
      double dy = (pr - half_r) * pixel_pitch;
      double dx = (pc - half_c) * pixel_pitch;
      points.push_back(center + axis_u * dx + axis_v * dy);
    }
  }
  return points;
}

Scene make_default_scene(double wavelength, double n0, double n1, double thickness,
                         double focal_length, double design_tilt, double aperture_radius,
                         double eyeball_distance, double pupil_diameter, double lens_focal,
                         double retina_distance, double pupil_offset, int retina_px,
                         double retina_halfspan, double source_pitch, int source_image_px,
                         int source_grid_points) {
  Scene scene;
  scene.hoe.center = {0.0, 0.0, 0.0};
  scene.hoe.orient = Mat3::identity();
  scene.hoe.aperture_radius = aperture_radius;
  scene.hoe.focal_length = focal_length;
  scene.hoe.design_tilt = design_tilt;
  scene.hoe.n0 = n0;
  scene.hoe.n1 = n1;
  scene.hoe.thickness = thickness;
  scene.hoe.design_wavelength = wavelength;

  scene.eye.eyeball_center = {0.0, 0.0, -eyeball_distance};
  scene.eye.orient = Mat3::identity();
  scene.eye.pupil_diameter = pupil_diameter;
  scene.eye.lens_focal = lens_focal;
  scene.eye.retina_distance = retina_distance;
  scene.eye.pupil_offset = pupil_offset;
  scene.eye.retina_px = retina_px;
  scene.eye.retina_halfspan = retina_halfspan;

  scene.source.center = scene.hoe.center + scene.hoe.orient * scene.hoe.focal_point_local();
  Vec3 toward_hoe = (scene.hoe.center - scene.source.center).normalized();
  scene.source.axis_u = Vec3{0.0, 1.0, 0.0}.cross(toward_hoe).normalized();
  scene.source.axis_v = toward_hoe.cross(scene.source.axis_u);
  scene.source.pixel_pitch = source_pitch;
  scene.source.image_rows = scene.source.image_cols = source_image_px;
  scene.source.grid_points = source_grid_points;
  scene.source.cone_half_angle = std::asin(1.22 * wavelength / source_pitch);
  scene.source.wavelength = wavelength;
  return scene;
}

std::vector<Ray> emit_rays(const Vec3& point, const Vec3& central_dir, double cone_half_angle,
                           int count, std::uint64_t seed, double wavelength) {
  if (count < 1) fail(errc::invalid_param, "emit_rays: count must be at least 1");
  if (!(cone_half_angle > 0.0) || !(cone_half_angle < kPi / 2.0))
    fail(errc::invalid_param, "emit_rays: cone half angle must be in (0, pi/2)");
  if (central_dir.norm() < 1e-12)
    fail(errc::invalid_param, "emit_rays: degenerate central direction");

  Vec3 w = central_dir.normalized();
  Vec3 u, v;
  basis_around(w, u, v);

  auto rng = make_engine(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double cos_min = std::cos(cone_half_angle);

  std::vector<Ray> rays;
  rays.reserve(count);
  double weight = 1.0 / static_cast<double>(count);
  for (int i = 0; i < count; ++i) {
    // Uniform over the solid-angle cone: cos(theta) uniform in [cos_min, 1].
    double ct = cos_min + (1.0 - cos_min) * uni(rng);
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double phi = 2.0 * kPi * uni(rng);
    Vec3 dir = (w * ct + u * (st * std::cos(phi)) + v * (st * std::sin(phi))).normalized();
    rays.push_back(Ray{point, dir, weight, wavelength});
  }
  return rays;
}

kog::GratingVectors local_grating(const HoeElement& hoe, const Vec3& hit_local) {
  Vec3 focal = hoe.focal_point_local();
  Vec3 ref_air = (hit_local - focal).normalized();     // design incident ray
  Vec3 sig_air{0.0, 0.0, -1.0};                        // collimated toward the eye
  Vec3 entry_normal{0.0, 0.0, 1.0};
  Vec3 ref_med = *refract(ref_air, entry_normal, 1.0 / hoe.n0);
  Vec3 sig_med = *refract(sig_air, entry_normal, 1.0 / hoe.n0);
  // Surface normal chosen along the propagation side so obliquity factors are
  // positive for transmitted orders.
  return kog::record_grating(ref_med, sig_med, hoe.design_wavelength, hoe.n0, hoe.n1,
                             hoe.thickness, Vec3{0.0, 0.0, -1.0});
}

std::optional<Ray> hoe_deflect(const HoeElement& hoe, const Ray& ray, TraceDiagnostics* diag) {
  auto discard = [&](CullStat TraceDiagnostics::* stat) -> std::optional<Ray> {
    if (diag) {
      (diag->*stat).count++;
      (diag->*stat).weight += ray.weight;
    }
    return std::nullopt;
  };

  Vec3 d_local = hoe.orient.apply_inv(ray.direction);
  Vec3 o_local = hoe.orient.apply_inv(ray.origin - hoe.center);
  if (d_local.z >= -1e-12) return discard(&TraceDiagnostics::miss_aperture);
  double t = -o_local.z / d_local.z;
  if (t <= 0.0) return discard(&TraceDiagnostics::miss_aperture);
  Vec3 hit = o_local + t * d_local;
  if (hit.x * hit.x + hit.y * hit.y > hoe.aperture_radius * hoe.aperture_radius)
    return discard(&TraceDiagnostics::miss_aperture);

  Vec3 d_medium = *refract(d_local, Vec3{0.0, 0.0, 1.0}, 1.0 / hoe.n0);

  kog::GratingVectors grating = local_grating(hoe, hit);
  kog::DiffractionResult replay;
  double eta;
  try {
    replay = kog::kvcm_replay(grating, d_medium);
    eta = kog::diffraction_efficiency(grating, replay);
  } catch (const Error& e) {
    bool grazing = std::string(e.what()).find("grazing") != std::string::npos;
    return discard(grazing ? &TraceDiagnostics::grazing : &TraceDiagnostics::off_shell);
  }

  Vec3 out_medium = replay.n_out / grating.beta;
  auto out_air = refract(out_medium.normalized(), Vec3{0.0, 0.0, 1.0}, hoe.n0);
  if (!out_air) return discard(&TraceDiagnostics::exit_tir);

  if (diag) {
    diag->zero_order.count++;
    diag->zero_order.weight += (1.0 - eta) * ray.weight;
  }

  Ray out;
  out.origin = hoe.center + hoe.orient * hit;
  out.direction = hoe.orient * (*out_air);
  out.weight = ray.weight * eta;
  out.wavelength = ray.wavelength;
  return out;
}

void trace_into_eye(const EyeModel& eye, const Ray& ray, RetinalImage& image,
                    TraceDiagnostics& diag) {
  auto discard = [&](CullStat TraceDiagnostics::* stat) {
    (diag.*stat).count++;
    (diag.*stat).weight += ray.weight;
  };

  Vec3 p = eye.orient.apply_inv(ray.origin - eye.eyeball_center);
  Vec3 d = eye.orient.apply_inv(ray.direction);
  if (d.z >= -1e-12) return discard(&TraceDiagnostics::miss_pupil);

  double lens_z = eye.pupil_offset;
  double t = (lens_z - p.z) / d.z;
  if (t <= 0.0) return discard(&TraceDiagnostics::miss_pupil);
  Vec3 h = p + t * d;
  double radius = 0.5 * eye.pupil_diameter;
  if (radius <= 0.0 || h.x * h.x + h.y * h.y > radius * radius)
    return discard(&TraceDiagnostics::miss_pupil);

  // Thin lens focused at infinity: a bundle with direction d converges at the
  // focal-plane point the chief ray through the lens center reaches.
  Vec3 lens_center{0.0, 0.0, lens_z};
  Vec3 focal_pt = lens_center + d * (eye.lens_focal / -d.z);
  Vec3 nd = (focal_pt - h).normalized();

  double retina_z = lens_z - eye.retina_distance;
  double t2 = (retina_z - h.z) / nd.z;
  if (t2 <= 0.0) return discard(&TraceDiagnostics::miss_retina);
  Vec3 r_pt = h + t2 * nd;

  double span = 2.0 * eye.retina_halfspan;
  double fx = (r_pt.x + eye.retina_halfspan) / span;
  double fy = (r_pt.y + eye.retina_halfspan) / span;
  auto col = static_cast<long>(std::floor(fx * eye.retina_px));
  auto row = static_cast<long>(std::floor(fy * eye.retina_px));
  if (row < 0 || col < 0 || row >= eye.retina_px || col >= eye.retina_px)
    return discard(&TraceDiagnostics::miss_retina);

  image.intensity(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) += ray.weight;
  image.hit_count(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) += 1;
  diag.hits += 1;
}

RenderOutput render_retinal_image(const Scene& scene, int rays_per_point, std::uint64_t seed) {
  if (rays_per_point < 1) fail(errc::invalid_param, "rays_per_point must be at least 1");

  RenderOutput out;
  auto n = static_cast<std::size_t>(scene.eye.retina_px);
  out.image.intensity = RealGrid(n, n, 0.0);
  out.image.hit_count = Grid<std::uint32_t>(n, n, 0);
  out.image.pixel_pitch = 2.0 * scene.eye.retina_halfspan / scene.eye.retina_px;

  auto points = scene.source.lit_point_positions();
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vec3 central = (scene.hoe.center - points[i]).normalized();
    auto rays = emit_rays(points[i], central, scene.source.cone_half_angle, rays_per_point,
                          derive_seed(seed, i), scene.source.wavelength);
    out.diag.emitted += rays.size();
    for (const auto& r : rays) {
      auto deflected = hoe_deflect(scene.hoe, r, &out.diag);
      if (!deflected) continue;
      trace_into_eye(scene.eye, *deflected, out.image, out.diag);
    }
  }
  return out;
}

} // namespace hs::ray

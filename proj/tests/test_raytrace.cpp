#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "raytrace/raytrace.hpp"

using namespace hs;
using namespace hs::ray;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWl = 532e-9;

double deg(double rad) { return rad * 180.0 / kPi; }
double rad(double d) { return d * kPi / 180.0; }

Scene default_scene() {
  return make_default_scene(kWl, 1.5, 0.04, 30e-6, 150e-3, rad(35.0), 25e-3, 30e-3, 3e-3,
                            17e-3, 17e-3, 13e-3, 201, 3e-3, 16.2e-6, 801, 17);
}

EyeModel axial_eye() {
  EyeModel eye;
  eye.eyeball_center = {0.0, 0.0, -30e-3};
  eye.orient = Mat3::identity();
  return eye;
}

RetinalImage blank_image(const EyeModel& eye) {
  RetinalImage image;
  auto n = static_cast<std::size_t>(eye.retina_px);
  image.intensity = RealGrid(n, n, 0.0);
  image.hit_count = Grid<std::uint32_t>(n, n, 0);
  image.pixel_pitch = 2.0 * eye.retina_halfspan / eye.retina_px;
  return image;
}

} // namespace

TEST_CASE("refraction basics") {
  Vec3 normal{0.0, 0.0, 1.0};
  Vec3 straight{0.0, 0.0, -1.0};
  auto r = refract(straight, normal, 1.0 / 1.5);
  REQUIRE(r.has_value());
  CHECK((*r - straight).norm() <= 1e-15);

  // Snell oracle at 30 degrees into n = 1.5
  Vec3 slanted{std::sin(rad(30.0)), 0.0, -std::cos(rad(30.0))};
  auto m = refract(slanted, normal, 1.0 / 1.5);
  REQUIRE(m.has_value());
  double sin_t = std::sqrt(m->x * m->x + m->y * m->y);
  CHECK(sin_t == doctest::Approx(std::sin(rad(30.0)) / 1.5).epsilon(1e-12));
  CHECK(m->norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m->z < 0.0);

  // total internal reflection leaving a dense medium at 60 degrees
  Vec3 steep{std::sin(rad(60.0)), 0.0, -std::cos(rad(60.0))};
  CHECK(!refract(steep, normal, 1.5).has_value());
}

TEST_CASE("diffraction cone full angle matches the Airy formula") {
  double full = diffraction_cone_full_angle(kWl, 16.2e-6);
  CHECK(deg(full) == doctest::Approx(4.59).epsilon(0.01));
  CHECK(full == doctest::Approx(2.0 * std::asin(1.22 * kWl / 16.2e-6)).epsilon(1e-15));
}

TEST_CASE("source grid point layout") {
  auto scene = default_scene();
  auto points = scene.source.lit_point_positions();
  REQUIRE(points.size() == 289);

  // uniform span: 17 points across 801 px = 50 px spacing
  double spacing = (points[1] - points[0]).norm();
  CHECK(spacing == doctest::Approx(50.0 * 16.2e-6).epsilon(1e-9));

  // the grid is centered on the source center
  Vec3 mean{0.0, 0.0, 0.0};
  for (const auto& p : points) mean = mean + p;
  mean = (1.0 / 289.0) * mean;
  CHECK((mean - scene.source.center).norm() <= 1e-9);

  // corners sit 400 px out along both axes
  double half_diag = (points.front() - scene.source.center).norm();
  CHECK(half_diag == doctest::Approx(std::sqrt(2.0) * 400.0 * 16.2e-6).epsilon(1e-9));
}

TEST_CASE("emitted rays are unit, inside the cone, and deterministic") {
  Vec3 origin{0.0, 0.0, 0.1};
  Vec3 central = Vec3{0.1, -0.2, -1.0}.normalized();
  double half = rad(2.3);
  auto rays = emit_rays(origin, central, half, 500, 42, kWl);
  REQUIRE(rays.size() == 500);
  double weight_sum = 0.0;
  for (const auto& r : rays) {
    CHECK(r.direction.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.direction.dot(central) >= std::cos(half) - 1e-12);
    CHECK((r.origin - origin).norm() == 0.0);
    weight_sum += r.weight;
  }
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-9));

  auto again = emit_rays(origin, central, half, 500, 42, kWl);
  for (std::size_t i = 0; i < rays.size(); ++i)
    CHECK((rays[i].direction - again[i].direction).norm() == 0.0);

  auto other = emit_rays(origin, central, half, 500, 43, kWl);
  bool differs = false;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if ((rays[i].direction - other[i].direction).norm() > 0.0) differs = true;
  CHECK(differs);

  CHECK_THROWS_AS(emit_rays(origin, central, half, 0, 1, kWl), Error);
  CHECK_THROWS_AS(emit_rays(origin, central, 0.0, 10, 1, kWl), Error);
}

TEST_CASE("design rays exit collimated toward the eye") {
  auto scene = default_scene();
  Vec3 focal = scene.hoe.center + scene.hoe.orient * scene.hoe.focal_point_local();
  CHECK((focal - scene.source.center).norm() <= 1e-12);

  for (Vec3 hit : {Vec3{0.0, 0.0, 0.0}, Vec3{5e-3, 2e-3, 0.0}, Vec3{-8e-3, -4e-3, 0.0}}) {
    Ray ray;
    ray.origin = focal;
    ray.direction = (hit - focal).normalized();
    ray.weight = 1.0;
    ray.wavelength = kWl;
    TraceDiagnostics diag;
    auto out = hoe_deflect(scene.hoe, ray, &diag);
    REQUIRE(out.has_value());
    CHECK((out->direction - Vec3{0.0, 0.0, -1.0}).norm() <= 1e-9);
    CHECK((out->origin - hit).norm() <= 1e-9);
    CHECK(out->weight > 0.0);
    CHECK(out->weight <= 1.0);
    // energy bookkeeping: the undiffracted remainder is logged as zero order
    CHECK(out->weight + diag.zero_order.weight == doctest::Approx(1.0).epsilon(1e-12));
    diag = TraceDiagnostics{};
  }
}

TEST_CASE("design efficiency matches the coupled-wave value for the local grating") {
  auto scene = default_scene();
  Vec3 hit{3e-3, -1e-3, 0.0};
  Vec3 focal = scene.hoe.focal_point_local();

  Ray ray;
  ray.origin = focal;
  ray.direction = (hit - focal).normalized();
  auto out = hoe_deflect(scene.hoe, ray);
  REQUIRE(out.has_value());

  auto grating = local_grating(scene.hoe, hit);
  auto replay = kog::kvcm_replay(grating, (grating.n_r / grating.beta).normalized());
  double eta = kog::diffraction_efficiency(grating, replay);
  CHECK(out->weight == doctest::Approx(eta).epsilon(1e-12));
  CHECK(replay.xi == doctest::Approx(0.0));
}

TEST_CASE("rays that miss the aperture or travel away are culled") {
  auto scene = default_scene();
  TraceDiagnostics diag;

  Ray away;
  away.origin = {0.0, 0.0, 0.1};
  away.direction = {0.0, 0.0, 1.0};
  CHECK(!hoe_deflect(scene.hoe, away, &diag).has_value());
  CHECK(diag.miss_aperture.count == 1);

  Ray wide;
  wide.origin = {40e-3, 0.0, 0.1};
  wide.direction = {0.0, 0.0, -1.0};
  CHECK(!hoe_deflect(scene.hoe, wide, &diag).has_value());
  CHECK(diag.miss_aperture.count == 2);
  CHECK(diag.miss_aperture.weight == doctest::Approx(2.0));
}

TEST_CASE("collimated bundle focuses to the central retina pixel") {
  EyeModel eye = axial_eye();
  auto image = blank_image(eye);
  TraceDiagnostics diag;

  for (double x : {0.0, 0.5e-3, -1.0e-3, 1.4e-3}) {
    Ray ray;
    ray.origin = {x, 0.0, 0.0};
    ray.direction = {0.0, 0.0, -1.0};
    ray.weight = 0.25;
    trace_into_eye(eye, ray, image, diag);
  }
  CHECK(diag.hits == 4);
  CHECK(image.intensity(100, 100) == doctest::Approx(1.0));
  CHECK(image.hit_count(100, 100) == 4);
}

TEST_CASE("oblique collimated rays land at f*tan(angle) off center") {
  EyeModel eye = axial_eye();
  auto image = blank_image(eye);
  TraceDiagnostics diag;

  double angle = rad(0.5);
  Ray ray;
  ray.origin = {0.0, 0.0, 0.0};
  ray.direction = {std::sin(angle), 0.0, -std::cos(angle)};
  trace_into_eye(eye, ray, image, diag);
  REQUIRE(diag.hits == 1);

  double expected_x = eye.lens_focal * std::tan(angle);
  double px = 2.0 * eye.retina_halfspan / eye.retina_px;
  auto col = static_cast<long>(std::floor((expected_x + eye.retina_halfspan) / px));
  CHECK(image.hit_count(100, static_cast<std::size_t>(col)) == 1);
}

TEST_CASE("rays outside the pupil are rejected") {
  EyeModel eye = axial_eye();
  auto image = blank_image(eye);
  TraceDiagnostics diag;

  Ray ray;
  ray.origin = {2e-3, 0.0, 0.0}; // pupil radius is 1.5 mm
  ray.direction = {0.0, 0.0, -1.0};
  trace_into_eye(eye, ray, image, diag);
  CHECK(diag.hits == 0);
  CHECK(diag.miss_pupil.count == 1);

  Ray up;
  up.origin = {0.0, 0.0, -50e-3};
  up.direction = {0.0, 0.0, 1.0};
  trace_into_eye(eye, up, image, diag);
  CHECK(diag.miss_pupil.count == 2);
}

TEST_CASE("full render is deterministic and conserves ray weight") {
  auto scene = default_scene();
  scene.source.grid_points = 3;
  scene.eye.retina_px = 51;

  auto out = render_retinal_image(scene, 400, 7);
  CHECK(out.diag.emitted == 9 * 400);
  CHECK(out.diag.hits > 0);

  double landed = 0.0;
  for (double v : out.image.intensity) landed += v;
  // every emitted unit of weight is either landed or logged as discarded
  CHECK(landed + out.diag.discarded_weight() == doctest::Approx(9.0).epsilon(1e-9));

  auto again = render_retinal_image(scene, 400, 7);
  CHECK(again.image.intensity == out.image.intensity);
  CHECK(again.diag.hits == out.diag.hits);

  auto other = render_retinal_image(scene, 400, 8);
  CHECK(other.image.intensity != out.image.intensity);
}

TEST_CASE("render rejects a non-positive ray budget") {
  auto scene = default_scene();
  CHECK_THROWS_AS(render_retinal_image(scene, 0, 1), Error);
}

#include "runner/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "cgh/cgh.hpp"
#include "core/rng.hpp"
#include "io/csv.hpp"
#include "io/hbgf.hpp"
#include "io/png_io.hpp"
#include "kogelnik/kogelnik.hpp"
#include "sweep/sweep.hpp"
#include "wavefield/fft.hpp"

namespace hs::run {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

double deg(double rad) { return rad * 180.0 / kPi; }
double rad(double d) { return d * kPi / 180.0; }

// Collects output files so a failed command leaves no partial artifacts.
class OutputSink {
public:
  OutputSink(const cfg::ExperimentConfig& config, const std::string& command)
      : config_(config), prefix_(command + "_" + cfg::config_hash(config) + "_") {
    fs::create_directories(config.output.directory);
  }

  std::string path(const std::string& name) {
    std::string p = (fs::path(config_.output.directory) / (prefix_ + name)).string();
    written_.push_back(p);
    return p;
  }

  bool want_hbgf() const { return config_.output.hbgf; }
  bool want_csv() const { return config_.output.csv; }
  bool want_png() const { return config_.output.png; }

  void discard_all() {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  std::vector<std::string> written() const { return written_; }

private:
  const cfg::ExperimentConfig& config_;
  std::string prefix_;
  std::vector<std::string> written_;
};

RealGrid load_real_or(const std::string& path, RealGrid fallback) {
  return path.empty() ? std::move(fallback) : io::read_hbgf_real(path);
}

cgh::PhaseHologram load_hologram(const cfg::ExperimentConfig& c) {
  if (c.cgh.input.empty())
    fail(errc::config, "config key 'cgh.input' is required for this command");
  cgh::PhaseHologram h;
  h.phase = io::read_hbgf_real(c.cgh.input);
  h.pitch = c.cgh.pitch_um * 1e-6;
  h.wavelength = c.optics.wavelength_nm * 1e-9;
  return h;
}

std::vector<double> plane_distances(const cfg::CghConfig& g) {
  std::vector<double> z;
  if (!g.distances_mm.empty()) {
    for (double d : g.distances_mm) z.push_back(d * 1e-3);
  } else {
    for (int p = 0; p < g.n_planes; ++p)
      z.push_back((g.base_distance_mm + p * g.separation_mm) * 1e-3);
  }
  return z;
}

void write_diagnostics_csv(const std::string& path, const ray::TraceDiagnostics& d) {
  io::CsvWriter csv(path);
  csv.row({"stage", "count", "discarded_weight"});
  auto line = [&](const char* stage, const ray::CullStat& s) {
    csv.row({stage, io::CsvWriter::num(static_cast<long long>(s.count)),
             io::CsvWriter::num(s.weight)});
  };
  csv.row({"emitted", io::CsvWriter::num(static_cast<long long>(d.emitted)),
           io::CsvWriter::num(0.0)});
  line("miss_aperture", d.miss_aperture);
  line("off_shell", d.off_shell);
  line("grazing", d.grazing);
  line("zero_order", d.zero_order);
  line("exit_tir", d.exit_tir);
  line("miss_pupil", d.miss_pupil);
  line("miss_retina", d.miss_retina);
  csv.row({"hits", io::CsvWriter::num(static_cast<long long>(d.hits)),
           io::CsvWriter::num(0.0)});
}

RealGrid counts_to_grid(const Grid<std::uint32_t>& counts) {
  RealGrid out(counts.rows(), counts.cols());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.data()[i] = static_cast<double>(counts.data()[i]);
  return out;
}

RunResult cmd_efficiency_map(const cfg::ExperimentConfig& c, OutputSink& sink) {
  kog::MaterialParams mat{c.optics.wavelength_nm * 1e-9, c.optics.n0, c.optics.n1,
                          c.optics.thickness_um * 1e-6};
  RealGrid map = kog::efficiency_map(c.kogelnik.theta_min_deg, c.kogelnik.theta_max_deg,
                                     c.kogelnik.theta_step_deg, mat);
  double max_eta = 0.0;
  std::size_t max_i = 0, max_j = 0;
  for (std::size_t i = 0; i < map.rows(); ++i)
    for (std::size_t j = 0; j < map.cols(); ++j)
      if (map(i, j) > max_eta) {
        max_eta = map(i, j);
        max_i = i;
        max_j = j;
      }

  if (sink.want_csv()) {
    io::CsvWriter csv(sink.path("map.csv"));
    csv.row({"theta_r_deg", "theta_s_deg", "eta"});
    for (std::size_t i = 0; i < map.rows(); ++i)
      for (std::size_t j = 0; j < map.cols(); ++j)
        csv.row({io::CsvWriter::num(c.kogelnik.theta_min_deg + i * c.kogelnik.theta_step_deg),
                 io::CsvWriter::num(c.kogelnik.theta_min_deg + j * c.kogelnik.theta_step_deg),
                 io::CsvWriter::num(map(i, j))});
  }
  if (sink.want_hbgf()) io::write_hbgf(sink.path("map.hbgf"), map);
  if (sink.want_png()) io::write_png_gray(sink.path("map.png"), map);

  std::ostringstream os;
  os << "efficiency-map: max eta " << max_eta << " at ("
     << c.kogelnik.theta_min_deg + max_i * c.kogelnik.theta_step_deg << " deg, "
     << c.kogelnik.theta_min_deg + max_j * c.kogelnik.theta_step_deg << " deg)";
  return {os.str(), sink.written()};
}

RunResult cmd_optimize(const cfg::ExperimentConfig& c, OutputSink& sink) {
  auto rows = static_cast<std::size_t>(c.cgh.rows);
  auto cols = static_cast<std::size_t>(c.cgh.cols);
  RealGrid image = load_real_or(c.cgh.input, synthetic_image(rows, cols, c.seed));
  RealGrid depth = load_real_or(c.cgh.depth_input, synthetic_depth(image.rows(), image.cols()));

  auto stack = cgh::build_plane_targets(image, depth, c.cgh.n_planes,
                                        c.cgh.base_distance_mm * 1e-3,
                                        c.cgh.separation_mm * 1e-3);
  cgh::OptimizerConfig opt{c.cgh.iterations, c.cgh.step_size, c.seed, c.cgh.loss_report_every};
  auto result = cgh::optimize_multiplane_phase(stack, opt, c.cgh.pitch_um * 1e-6,
                                               c.optics.wavelength_nm * 1e-9);

  if (sink.want_hbgf()) io::write_hbgf(sink.path("phase.hbgf"), result.hologram.phase);
  if (sink.want_png()) io::write_png_gray(sink.path("phase.png"), result.hologram.phase);
  if (sink.want_csv()) {
    io::CsvWriter csv(sink.path("loss.csv"));
    csv.row({"iteration", "loss"});
    for (std::size_t i = 0; i < result.loss_trace.size(); ++i)
      csv.row({io::CsvWriter::num(static_cast<long long>(i * c.cgh.loss_report_every)),
               io::CsvWriter::num(result.loss_trace[i])});
  }

  std::ostringstream os;
  os << "optimize-hologram: loss " << result.loss_trace.front() << " -> "
     << result.loss_trace.back() << " over " << c.cgh.iterations << " iterations";
  return {os.str(), sink.written()};
}

RunResult cmd_encode(const cfg::ExperimentConfig& c, OutputSink& sink) {
  if (c.cgh.input.empty())
    fail(errc::config, "config key 'cgh.input' is required for encode");
  wave::ComplexField field;
  field.data = io::read_hbgf_complex(c.cgh.input);
  field.pitch = c.cgh.pitch_um * 1e-6;
  field.wavelength = c.optics.wavelength_nm * 1e-9;

  auto [a, b] = cgh::complex_to_double_phase(field, c.cgh.a_max);
  cgh::PhaseHologram h = cgh::double_phase_assemble(a, b, field.pitch, field.wavelength);
  if (c.cgh.apply_grating) h = cgh::apply_linear_grating(h);

  if (sink.want_hbgf()) io::write_hbgf(sink.path("phase.hbgf"), h.phase);
  if (sink.want_png()) io::write_png_gray(sink.path("phase.png"), h.phase);
  return {"encode: wrote double-phase hologram (" + std::to_string(h.rows()) + "x" +
              std::to_string(h.cols()) + ")",
          sink.written()};
}

RunResult cmd_reconstruct(const cfg::ExperimentConfig& c, OutputSink& sink) {
  cgh::PhaseHologram h = load_hologram(c);
  auto distances = plane_distances(c.cgh);
  auto planes = cgh::reconstruct_stack(h, distances);
  for (std::size_t p = 0; p < planes.size(); ++p) {
    std::string tag = "plane" + std::to_string(p);
    if (sink.want_hbgf()) io::write_hbgf(sink.path(tag + ".hbgf"), planes[p]);
    if (sink.want_png()) io::write_png_gray(sink.path(tag + ".png"), planes[p]);
  }
  return {"reconstruct: " + std::to_string(planes.size()) + " planes", sink.written()};
}

RunResult cmd_render_retina(const cfg::ExperimentConfig& c, OutputSink& sink) {
  ray::Scene scene = scene_from_config(c.optics);
  auto out = ray::render_retinal_image(scene, c.optics.rays_per_point, c.seed);

  if (sink.want_hbgf()) {
    io::write_hbgf(sink.path("retina.hbgf"), out.image.intensity);
    io::write_hbgf(sink.path("hits.hbgf"), counts_to_grid(out.image.hit_count));
  }
  if (sink.want_png()) io::write_png_gray(sink.path("retina.png"), out.image.intensity);
  if (sink.want_csv()) write_diagnostics_csv(sink.path("diagnostics.csv"), out.diag);

  double total = 0.0;
  for (double v : out.image.intensity) total += v;
  std::ostringstream os;
  os << "render-retina: " << out.diag.hits << " hits, total intensity " << total;
  return {os.str(), sink.written()};
}

RunResult cmd_sweep(const cfg::ExperimentConfig& c, OutputSink& sink) {
  ray::Scene scene = scene_from_config(c.optics);
  sweep::SweepConfig sc;
  sc.axis = sweep::axis_from_string(c.sweep.axis);
  if (sc.axis == sweep::SweepAxis::head_pan_tilt) {
    sc.range_lo = -rad(c.sweep.range_deg);
    sc.range_hi = rad(c.sweep.range_deg);
    sc.step = rad(c.sweep.step_deg);
  } else {
    sc.range_lo = -c.sweep.range_mm * 1e-3;
    sc.range_hi = c.sweep.range_mm * 1e-3;
    sc.step = c.sweep.step_mm * 1e-3;
  }
  sc.rays_per_point = c.optics.rays_per_point;
  sc.seed = c.seed;
  sc.threads = c.threads;

  auto result = sweep::run_sweep(scene, sc);
  bool angular = sc.axis == sweep::SweepAxis::head_pan_tilt;
  auto tick = [&](std::size_t i) {
    return angular ? deg(result.ticks[i]) : result.ticks[i] * 1e3;
  };

  if (sink.want_csv()) {
    io::CsvWriter csv(sink.path("brightness.csv"));
    csv.row({"param_a", "param_b", "relative_brightness"});
    for (std::size_t i = 0; i < result.brightness.rows(); ++i)
      for (std::size_t j = 0; j < result.brightness.cols(); ++j)
        csv.row({io::CsvWriter::num(tick(j)), io::CsvWriter::num(tick(i)),
                 io::CsvWriter::num(result.brightness(i, j))});
  }
  if (sink.want_hbgf()) {
    io::write_hbgf(sink.path("brightness.hbgf"), result.brightness);
    io::write_hbgf(sink.path("intensity_accum.hbgf"), result.intensity_accumulation);
    io::write_hbgf(sink.path("hit_accum_r.hbgf"), result.hit_accumulation.r);
    io::write_hbgf(sink.path("hit_accum_g.hbgf"), result.hit_accumulation.g);
    io::write_hbgf(sink.path("hit_accum_b.hbgf"), result.hit_accumulation.b);
  }
  if (sink.want_png()) {
    io::write_png_gray(sink.path("brightness.png"), result.brightness);
    io::write_png_gray(sink.path("intensity_accum.png"), result.intensity_accumulation);
    io::write_png_rgb(sink.path("hit_accum.png"), result.hit_accumulation.r,
                      result.hit_accumulation.g, result.hit_accumulation.b);
  }

  auto spread = sweep::compare_axis_robustness(result);
  std::ostringstream os;
  os << "sweep " << c.sweep.axis << ": " << result.brightness.rows() << "x"
     << result.brightness.cols() << " grid, spread a " << spread.along_a << ", b "
     << spread.along_b;
  return {os.str(), sink.written()};
}

} // namespace

RealGrid synthetic_image(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  // White noise shaped to a 1/f amplitude spectrum, normalized to [0,1].
  ComplexGrid spec(rows, cols);
  auto rng = make_engine(derive_seed(seed, 0x1f1f));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double fr = std::min<double>(r, rows - r);
      double fc = std::min<double>(c, cols - c);
      double f = std::sqrt(fr * fr + fc * fc);
      double amp = (f == 0.0) ? 0.0 : 1.0 / f;
      double phase = 2.0 * kPi * uni(rng);
      spec(r, c) = std::polar(amp, phase);
    }
  }
  wave::ifft2(spec);
  RealGrid img(rows, cols);
  double lo = std::real(spec(0, 0)), hi = lo;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double v = std::real(spec.data()[i]);
    img.data()[i] = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span = hi > lo ? hi - lo : 1.0;
  for (auto& v : img) v = (v - lo) / span;
  return img;
}

RealGrid synthetic_depth(std::size_t rows, std::size_t cols) {
  RealGrid depth(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      depth(r, c) = (cols > 1) ? static_cast<double>(c) / (cols - 1) : 0.0;
  return depth;
}

ray::Scene scene_from_config(const cfg::OpticsConfig& o) {
  return ray::make_default_scene(
      o.wavelength_nm * 1e-9, o.n0, o.n1, o.thickness_um * 1e-6, o.hoe_focal_mm * 1e-3,
      rad(o.hoe_tilt_deg), o.hoe_aperture_mm * 1e-3, o.eyeball_distance_mm * 1e-3,
      o.pupil_diameter_mm * 1e-3, o.eye_focal_mm * 1e-3, o.retina_distance_mm * 1e-3,
      o.pupil_offset_mm * 1e-3, o.retina_pixels, o.retina_halfspan_mm * 1e-3,
      o.source_pitch_um * 1e-6, o.source_image_px, o.source_grid_points);
}

RunResult run_command(const std::string& command, const cfg::ExperimentConfig& config) {
  OutputSink sink(config, command);
  try {
    if (command == "efficiency-map") return cmd_efficiency_map(config, sink);
    if (command == "optimize-hologram") return cmd_optimize(config, sink);
    if (command == "encode") return cmd_encode(config, sink);
    if (command == "reconstruct") return cmd_reconstruct(config, sink);
    if (command == "render-retina") return cmd_render_retina(config, sink);
    if (command == "sweep") return cmd_sweep(config, sink);
  } catch (...) {
    sink.discard_all();
    throw;
  }
  fail(errc::unknown_command, "unknown command: " + command);
}

} // namespace hs::run

#ifndef HS_CGH_CGH_HPP
#define HS_CGH_CGH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "wavefield/wavefield.hpp"

namespace hs::cgh {

// Per-plane optimization targets. Masks are pairwise disjoint and together
// cover every pixel; distances are strictly increasing.
struct PlaneTargetStack {
  std::vector<RealGrid> targets;
  std::vector<BoolGrid> masks;
  std::vector<double> distances;
  std::vector<double> weights;

  std::size_t n_planes() const { return targets.size(); }
  std::size_t rows() const { return targets.empty() ? 0 : targets[0].rows(); }
  std::size_t cols() const { return targets.empty() ? 0 : targets[0].cols(); }
};

// Phase-only modulation grid, wrapped to [-pi, pi). The physical field on the
// modulator is e^{-j phi}; internal propagation uses e^{+i phi} with the
// conjugation handled once at that boundary.
struct PhaseHologram {
  RealGrid phase;
  double pitch = 0.0;
  double wavelength = 0.0;

  std::size_t rows() const { return phase.rows(); }
  std::size_t cols() const { return phase.cols(); }
};

struct OptimizerConfig {
  int iterations = 200;
  double step_size = 0.5;
  std::uint64_t seed = 0;
  int loss_report_every = 1;
};

double wrap_phase(double x); // -> [-pi, pi)

PlaneTargetStack build_plane_targets(const RealGrid& image, const RealGrid& depth, int n_planes,
                                     double base_distance, double separation);

// Masked per-plane squared intensity error and its Wirtinger/adjoint gradient
// with respect to the phase.
std::pair<double, RealGrid> loss_and_gradient(const PhaseHologram& phase,
                                              const PlaneTargetStack& stack);

struct OptimizeResult {
  PhaseHologram hologram;
  std::vector<double> loss_trace; // loss before each reported iteration
};

OptimizeResult optimize_multiplane_phase(const PlaneTargetStack& stack,
                                         const OptimizerConfig& config, double pitch,
                                         double wavelength);

// Double-phase decomposition: every complex sample (a, phi) becomes the two
// unit phasors phi +- acos(a/a_max), whose mean reproduces (a/a_max) e^{i phi}.
std::pair<RealGrid, RealGrid> complex_to_double_phase(const wave::ComplexField& field,
                                                      double a_max);

// Checkerboard interleave: phase[even,even] = a, [odd,odd] = a,
// [even,odd] = b, [odd,even] = b.
PhaseHologram double_phase_assemble(const RealGrid& chan_a, const RealGrid& chan_b, double pitch,
                                    double wavelength);

// De-interleave counterpart; recovers the sampled positions of both channels.
std::pair<RealGrid, RealGrid> double_phase_split(const PhaseHologram& h);

// Adds pi to the phase of every odd row, shifting undiffracted light away
// from the DC order. Involution.
PhaseHologram apply_linear_grating(const PhaseHologram& h);

std::vector<RealGrid> reconstruct_stack(const PhaseHologram& h,
                                        const std::vector<double>& distances);

// Field e^{+i phi} carried into propagation.
wave::ComplexField hologram_field(const PhaseHologram& h);

} // namespace hs::cgh

#endif

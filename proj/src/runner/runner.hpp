#ifndef HS_RUNNER_RUNNER_HPP
#define HS_RUNNER_RUNNER_HPP

#include <string>
#include <vector>

#include "config/config.hpp"
#include "core/grid.hpp"
#include "raytrace/raytrace.hpp"

namespace hs::run {

struct RunResult {
  std::string summary;
  std::vector<std::string> outputs;
};

// Dispatches one of: efficiency-map, optimize-hologram, encode, reconstruct,
// render-retina, sweep. Partial outputs are removed when the command fails.
RunResult run_command(const std::string& command, const cfg::ExperimentConfig& config);

// Procedural 1/f-spectrum test image in [0,1]; stands in for a natural image
// when no input file is configured.
RealGrid synthetic_image(std::size_t rows, std::size_t cols, std::uint64_t seed);

// Horizontal linear depth ramp over [0,1].
RealGrid synthetic_depth(std::size_t rows, std::size_t cols);

ray::Scene scene_from_config(const cfg::OpticsConfig& optics);

} // namespace hs::run

#endif

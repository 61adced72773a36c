// Command-line front end; all physics goes through the shared-library C API.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holosim.h"

namespace {

// Applies "section.key=value" overrides to the raw JSON before the library
// parses and validates it.
std::string apply_overrides(std::string json_text, const std::vector<std::string>& sets) {
  auto root = nlohmann::json::parse(json_text);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--set expects section.key=value, got: " + kv);
    std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);

    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(value);
    } catch (const nlohmann::json::parse_error&) {
      parsed = value; // bare strings need no quoting on the command line
    }

    nlohmann::json* node = &root;
    std::size_t start = 0;
    for (auto dot = key.find('.'); dot != std::string::npos;
         start = dot + 1, dot = key.find('.', start))
      node = &(*node)[key.substr(start, dot - start)];
    (*node)[key.substr(start)] = parsed;
  }
  return root.dump();
}

int run(const std::string& command, const std::string& config_path,
        const std::string& output_dir, bool has_seed, std::uint64_t seed, int threads,
        const std::vector<std::string>& sets) {
  std::string json_text = "{}";
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) {
      std::fprintf(stderr, "error: cannot open config file: %s\n", config_path.c_str());
      return HS_ERR_IO;
    }
    std::stringstream ss;
    ss << is.rdbuf();
    json_text = ss.str();
  }
  try {
    json_text = apply_overrides(json_text, sets);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return HS_ERR_CONFIG;
  }

  hs_config* config = nullptr;
  if (hs_status s = hs_config_load_json(json_text.c_str(), &config); s != HS_OK) {
    std::fprintf(stderr, "error: %s\n", hs_last_error());
    return s;
  }
  if (!output_dir.empty()) hs_config_set_output_dir(config, output_dir.c_str());
  if (has_seed) hs_config_set_seed(config, seed);
  if (threads >= 0) hs_config_set_threads(config, threads);

  char summary[512] = {0};
  hs_status s = hs_run(config, command.c_str(), summary, sizeof summary);
  hs_config_free(config);
  if (s != HS_OK) {
    std::fprintf(stderr, "error [%d]: %s\n", static_cast<int>(s), hs_last_error());
    return s;
  }
  std::printf("%s\n", summary);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"holographic display simulation toolkit"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  std::uint64_t seed = 0;
  int threads = -1;
  std::vector<std::string> sets;

  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--output", output_dir, "output directory (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "seed (overrides config)");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");
  app.add_option("--set", sets, "config override, section.key=value (repeatable)");

  const char* commands[] = {"efficiency-map", "optimize-hologram", "encode",
                            "reconstruct",    "render-retina",     "sweep"};
  const char* descriptions[] = {
      "Bragg-matched diffraction efficiency over recording angle pairs",
      "multiplane phase-only hologram by gradient descent",
      "double-phase encode a complex field into a phase hologram",
      "propagate a phase hologram to the configured plane distances",
      "trace the default viewing layout onto the retina",
      "misalignment sweep (eyebox / head orientation / head translation)"};
  for (int i = 0; i < 6; ++i) app.add_subcommand(commands[i], descriptions[i]);

  CLI11_PARSE(app, argc, argv);

  std::string command = app.get_subcommands().front()->get_name();
  return run(command, config_path, output_dir, seed_opt->count() > 0, seed, threads, sets);
}

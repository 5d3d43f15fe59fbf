#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlfp/grid.hpp"

namespace nlfp {

// Flat `section.key = value` configuration (diff-able, trivially parseable).
// Unknown keys, unresolvable catalog names and empty parameter lists are
// reported with the offending key; parse errors carry the line number.
struct ExperimentConfig {
  std::string experiment = "solve";

  std::string kernel_name = "uniform";
  int dim = 1;
  std::map<std::string, double> kernel_params;

  std::vector<double> epsilons = {1.0, 0.5, 0.25};
  std::vector<double> times = {0.5, 1.0, 2.0};

  GridSpec grid{1, 12.0, 4096};

  Weight weight = Weight::polynomial(2.0);

  std::string initial_name = "gaussian";
  std::map<std::string, double> initial_params = {{"mean", 2.0}, {"var", 0.25}};

  std::uint64_t mc_particles = 0;
  std::uint64_t mc_seed = 20240801;

  std::vector<int> clt_n_list = {8, 16, 32, 64, 128};
  double positivity_r1 = 1.0;
  double positivity_r2 = 1.0;
  double tails_a = 0.0;  // 0 selects 1/(eps R)

  std::string output_dir = "out";
  bool svg = true;
  int threads = 1;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "config");

// Apply a single `key = value` override (same keys as the file format).
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                        const std::string& where);

void validate_config(const ExperimentConfig& cfg);

struct RunResult {
  std::vector<std::string> files;  // relative to output_dir, manifest first
};

// Executes the named experiment and persists a manifest, one CSV per measured
// table and optional SVG plots.  Re-running an identical config reproduces
// identical CSV bytes.  Throws on validation or numerical errors; refuses to
// write into a directory holding a previous run unless overwrite is set.
RunResult run_experiment(const ExperimentConfig& cfg, bool overwrite = false);

const char* library_version();

}  // namespace nlfp

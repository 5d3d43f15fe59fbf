// Command-line experiment runner.  Uses only the public C API.
//
//   nlfp <subcommand> --config <path> [--out <dir>] [--overwrite]
//        [--threads N] [--no-svg] [--set key=value ...]
//
// Subcommands mirror the `experiment` config key: solve, equilibrium, rates,
// clt, cumulants, lyapunov, positivity, tails, all.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlfp/nlfp.h"

namespace {

int fail(const char* stage) {
  std::fprintf(stderr, "nlfp: %s: %s\n", stage, nlfp_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonlocal Fokker-Planck laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool overwrite = false;
  bool no_svg = false;
  int threads = 0;
  std::vector<std::string> overrides;

  const std::vector<std::string> subcommands = {"solve",      "equilibrium", "rates",
                                                "clt",        "cumulants",   "lyapunov",
                                                "positivity", "tails",       "all"};
  for (const auto& name : subcommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment configuration file");
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_flag("--overwrite", overwrite, "replace a previous run in the output directory");
    sub->add_option("--threads", threads, "worker threads for parameter cells");
    sub->add_flag("--no-svg", no_svg, "skip SVG plots");
    sub->add_option("--set", overrides, "extra key=value overrides")->take_all();
  }

  CLI11_PARSE(app, argc, argv);
  const std::string experiment = app.get_subcommands().front()->get_name();

  nlfp_config* config = nullptr;
  if (!config_path.empty()) {
    if (nlfp_config_load(config_path.c_str(), &config) != NLFP_OK) return fail("config");
  } else {
    if (nlfp_config_create(&config) != NLFP_OK) return fail("config");
  }

  if (nlfp_config_set(config, "experiment", experiment.c_str()) != NLFP_OK) {
    nlfp_config_free(config);
    return fail("config");
  }
  if (out_dir.empty()) {
    const char* env = std::getenv("NLFP_OUT_DIR");
    if (env != nullptr) out_dir = env;
  }
  if (!out_dir.empty() && nlfp_config_set(config, "output.dir", out_dir.c_str()) != NLFP_OK) {
    nlfp_config_free(config);
    return fail("config");
  }
  if (threads > 0 &&
      nlfp_config_set(config, "threads", std::to_string(threads).c_str()) != NLFP_OK) {
    nlfp_config_free(config);
    return fail("config");
  }
  if (no_svg && nlfp_config_set(config, "output.svg", "false") != NLFP_OK) {
    nlfp_config_free(config);
    return fail("config");
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "nlfp: --set expects key=value, got '%s'\n", kv.c_str());
      nlfp_config_free(config);
      return 1;
    }
    if (nlfp_config_set(config, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()) != NLFP_OK) {
      nlfp_config_free(config);
      return fail("config");
    }
  }

  const nlfp_status status = nlfp_run_experiment(config, overwrite ? 1 : 0);
  nlfp_config_free(config);
  if (status != NLFP_OK) return fail("run");
  std::printf("nlfp %s: experiment '%s' complete\n", nlfp_version(), experiment.c_str());
  return 0;
}

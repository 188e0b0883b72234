#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "franson/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;

struct GlobalOpts {
  std::string config_path;
  std::string out_path;
  std::string format;  // empty = per-subcommand default
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool override_validation = false;
};

int run(const std::string& subcommand, const GlobalOpts& opts) {
  using namespace franson;

  io::RunConfig cfg = io::load_config(opts.config_path);
  if (opts.seed_set) cfg.mc.seed = opts.seed;

  const auto violations = io::validate_config(cfg);
  bool fatal = false;
  for (const auto& v : violations) {
    if (v.rfind("warning:", 0) != 0) fatal = true;
  }

  io::ResultEnvelope env;
  if (subcommand == "levels") env = io::cmd_levels(cfg);
  else if (subcommand == "rate") env = io::cmd_rate(cfg);
  else if (subcommand == "sweep") env = io::cmd_sweep(cfg);
  else if (subcommand == "mc") env = io::cmd_mc(cfg);
  else if (subcommand == "chsh") env = io::cmd_chsh(cfg);
  env.meta["validation_overridden"] = opts.override_validation;

  std::string format = opts.format;
  if (format.empty()) format = (subcommand == "sweep") ? "csv" : "json";
  io::write_envelope(env, opts.out_path, format);

  if (fatal && !opts.override_validation) {
    std::cerr << "configuration failed validation (use --override-validation "
                 "to run anyway):\n";
    for (const auto& v : violations) std::cerr << "  " << v << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Franson two-photon interference simulator with minimal-length "
               "(GUP) corrections"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts opts;
  app.add_option("--config", opts.config_path, "path to the JSON run config")
      ->required();
  app.add_option("--out", opts.out_path, "output path (default stdout)");
  app.add_option("--format", opts.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt =
      app.add_option("--seed", opts.seed, "override the config RNG seed");
  app.add_flag("--override-validation", opts.override_validation,
               "run even when the configuration fails validation");

  app.add_subcommand("levels", "cascade level energies and GUP corrections");
  app.add_subcommand("rate", "single analytic coincidence rate");
  app.add_subcommand("sweep", "analytic or MC spectrum over a parameter axis");
  app.add_subcommand("mc", "Monte-Carlo pair simulation at the configured point");
  app.add_subcommand("chsh", "CHSH statistic from the analytic rate law");

  CLI11_PARSE(app, argc, argv);
  opts.seed_set = seed_opt->count() > 0;

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    return run(subcommand, opts);
  } catch (const franson::io::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const franson::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

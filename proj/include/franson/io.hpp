#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "franson/chsh.hpp"
#include "franson/core.hpp"
#include "franson/levels.hpp"
#include "franson/montecarlo.hpp"
#include "franson/rates.hpp"

namespace franson::io {

/// Malformed configuration (unknown keys, missing keys, bad values): exit 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem trouble reading or writing: exit 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct McSettings {
  std::uint64_t n_pairs = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct SweepSpec {
  std::string axis = "phi2";  // phi1 | phi2 | delta_t | beta
  double min = 0.0;
  double max = 0.0;
  int samples = 0;
  std::string mode = "analytic";  // analytic | mc
  bool overlay_beta0 = false;
};

struct ChshSettings {
  int resolution = 32;
  int refinement = 3;
  bool has_fixed = false;
  std::array<double, 4> fixed{};  // a, a', b, b' when has_fixed
};

/// Everything one run needs. Cascade energies derive from the model system
/// and level map; the config supplies the lifetimes.
struct RunConfig {
  ModelSystem system = HarmonicOscillator{};
  LevelMap levels;
  double tau1 = 0.0, tau2 = 0.0, tau3 = 0.0;
  InterferometerConfig ifc;
  GupParams gup;
  ModeCoefficients modes;
  McSettings mc;
  SweepSpec sweep;
  ChshSettings chsh;
  UnitSystem units;
  bool damping = false;
};

/// Structured output: config echo, run metadata, payload, validation report.
struct ResultEnvelope {
  nlohmann::json config;
  nlohmann::json meta;
  nlohmann::json payload;
  std::vector<std::string> validation;

  nlohmann::json to_json() const;
};

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

/// Cascade spec implied by the config (energies from the model system).
CascadeSpec cascade_of(const RunConfig& cfg);

/// FNV-1a over the canonical config dump, hex-encoded.
std::string config_hash(const RunConfig& cfg);

/// Validation violations plus the perturbative-regime warning.
std::vector<std::string> validate_config(const RunConfig& cfg);

ResultEnvelope cmd_levels(const RunConfig& cfg);
ResultEnvelope cmd_rate(const RunConfig& cfg);
ResultEnvelope cmd_sweep(const RunConfig& cfg);
ResultEnvelope cmd_mc(const RunConfig& cfg);
ResultEnvelope cmd_chsh(const RunConfig& cfg);

/// CSV rendering of an envelope: '#'-prefixed metadata header block, then a
/// fixed-order header row and the payload rows. Only sweep and mc payloads
/// have a CSV form.
std::string envelope_to_csv(const ResultEnvelope& env);

/// Serializes to path ("-" or empty = stdout) in the given format
/// ("json" | "csv").
void write_envelope(const ResultEnvelope& env, const std::string& path,
                    const std::string& format);

/// %.17g rendering used everywhere a double crosses a text boundary.
std::string fmt17(double v);

}  // namespace franson::io

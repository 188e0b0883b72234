#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "franson/io.hpp"

using namespace franson;
using nlohmann::json;

namespace {

json sample_config_json() {
  return json::parse(R"({
    "system": {"type": "oscillator", "mass": 1.0, "omega": 1.0},
    "levels": {"n1": 2, "n2": 1, "n3": 0},
    "cascade": {"tau1": 100.0, "tau2": 0.1, "tau3": 1000.0},
    "interferometer": {"delta_t": 10.0, "phi1": 0.0, "phi2": 0.0,
                       "eta1": 1.0, "eta2": 1.0, "window": 1.0},
    "gup": {"beta": 0.0, "deformation": "quadratic_momentum"},
    "modes": {"c": [[1.0, 0.0]], "c_prime": [[0.0, 0.0]]},
    "mc": {"n_pairs": 1000, "seed": 42, "threads": 1},
    "sweep": {"axis": "phi2", "min": 0.0, "max": 6.283185307179586,
              "samples": 4, "mode": "analytic"}
  })");
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string("/tmp/franson_test_") + name;
  std::ofstream out(path);
  out << text;
  return path;
}

#ifdef FRANSON_CLI_PATH
int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRANSON_CLI_PATH) + " " + args +
                          " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("config round-trips through its echo") {
  const io::RunConfig cfg = io::parse_config(sample_config_json());
  const json echo = io::config_to_json(cfg);
  const io::RunConfig again = io::parse_config(echo);
  CHECK(io::config_to_json(again) == echo);
  CHECK(io::config_hash(cfg) == io::config_hash(again));
}

TEST_CASE("unknown keys are rejected") {
  json j = sample_config_json();
  j["interferometer"]["detla_t"] = 1.0;  // typo'd key
  try {
    io::parse_config(j);
    FAIL("expected ConfigError");
  } catch (const io::ConfigError& e) {
    CHECK(std::string(e.what()).find("detla_t") != std::string::npos);
  }
}

TEST_CASE("all missing keys are listed in one error") {
  json j = sample_config_json();
  j.erase("levels");
  j["cascade"].erase("tau2");
  j["modes"].erase("c_prime");
  try {
    io::parse_config(j);
    FAIL("expected ConfigError");
  } catch (const io::ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("levels") != std::string::npos);
    CHECK(msg.find("cascade.tau2") != std::string::npos);
    CHECK(msg.find("modes.c_prime") != std::string::npos);
  }
}

TEST_CASE("derived cascade energies follow the model system") {
  const io::RunConfig cfg = io::parse_config(sample_config_json());
  const CascadeSpec cas = io::cascade_of(cfg);
  CHECK(cas.e1 == doctest::Approx(2.5));
  CHECK(cas.e2 == doctest::Approx(1.5));
  CHECK(cas.e3 == doctest::Approx(0.5));
  CHECK(io::validate_config(cfg).empty());
}

TEST_CASE("levels payload carries the deltas; beta stays out of energies") {
  io::RunConfig cfg = io::parse_config(sample_config_json());
  const auto env0 = io::cmd_levels(cfg);
  cfg.gup.beta = 1e-3;
  const auto env1 = io::cmd_levels(cfg);
  CHECK(env0.payload.at("delta_e").get<double>() == doctest::Approx(2.0));
  CHECK(env0.payload.at("delta_e_p").get<double>() == doctest::Approx(9.0));
  // beta multiplies downstream only; the level energies do not move
  CHECK(env0.payload.at("level1") == env1.payload.at("level1"));
  CHECK(env0.payload.at("delta_e_p") == env1.payload.at("delta_e_p"));
}

TEST_CASE("rate payload matches the analytic law") {
  const io::RunConfig cfg = io::parse_config(sample_config_json());
  const auto env = io::cmd_rate(cfg);
  const double expect = rate_baseline(1.0, 0.0, 0.0, 2.0, 10.0);
  CHECK(env.payload.at("rate").get<double>() == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("golden CSV for the four-point sweep") {
  const io::RunConfig cfg = io::parse_config(sample_config_json());
  const auto env = io::cmd_sweep(cfg);
  const std::string csv = io::envelope_to_csv(env);

  // payload rows only (drop the '#' metadata block)
  std::vector<std::string> rows;
  std::istringstream is(csv);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  // delta_e*delta_t = 20 rad enters every phase
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "axis_name,axis_value,rate");
  const double de_dt = 20.0;
  const double pi = 3.14159265358979323846;
  const std::array<double, 4> xs{0.0, pi / 2, pi, 3 * pi / 2};
  for (int i = 0; i < 4; ++i) {
    std::ostringstream expect;
    expect << "phi2," << io::fmt17(xs[i]) << ","
           << io::fmt17(rate_baseline(1.0, 0.0, xs[i], 2.0, 10.0));
    CHECK(rows[i + 1] == expect.str());
  }
}

TEST_CASE("golden CSV for a zero-energy sweep reproduces the textbook rates") {
  json j = sample_config_json();
  // delta_t enters only through delta_e*delta_t; a well with n picked so
  // delta_e*delta_t is a multiple of 2*pi keeps the textbook values.
  j["interferometer"]["delta_t"] = 3.14159265358979323846;
  j["interferometer"]["window"] = 0.5;
  const io::RunConfig cfg = io::parse_config(j);
  const auto env = io::cmd_sweep(cfg);
  const std::string csv = io::envelope_to_csv(env);
  std::vector<std::string> rows;
  std::istringstream is(csv);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  REQUIRE(rows.size() == 5);
  // frozen golden rows (2*pi phase from delta_e*delta_t = 2pi)
  CHECK(rows[1] == "phi2,0,0.25");
  CHECK(rows[2] == "phi2,1.5707963267948966,0.12500000000000006");
  CHECK(rows[3] == "phi2,3.1415926535897931,8.4361487774729477e-33");
  CHECK(rows[4] == "phi2,4.7123889803846897,0.12499999999999994");
}

TEST_CASE("overlay adds the beta=0 column") {
  json j = sample_config_json();
  j["gup"]["beta"] = 1e-3;
  j["modes"]["c_prime"] = {{0.25, 0.0}};
  j["sweep"]["overlay_beta0"] = true;
  const io::RunConfig cfg = io::parse_config(j);
  const std::string csv = io::envelope_to_csv(io::cmd_sweep(cfg));
  CHECK(csv.find("axis_name,axis_value,rate,rate_beta0") != std::string::npos);
}

TEST_CASE("mc sweep attaches the std_error column") {
  json j = sample_config_json();
  j["sweep"]["mode"] = "mc";
  const io::RunConfig cfg = io::parse_config(j);
  const std::string csv = io::envelope_to_csv(io::cmd_sweep(cfg));
  CHECK(csv.find("axis_name,axis_value,rate,std_error") != std::string::npos);
}

TEST_CASE("envelope JSON has the fixed top-level shape and echoes the config") {
  const io::RunConfig cfg = io::parse_config(sample_config_json());
  const json j = io::cmd_rate(cfg).to_json();
  CHECK(j.contains("config"));
  CHECK(j.contains("meta"));
  CHECK(j.contains("payload"));
  CHECK(j.contains("validation"));
  CHECK(j.at("meta").at("seed").get<std::uint64_t>() == 42);
  const io::RunConfig echoed = io::parse_config(j.at("config"));
  CHECK(io::config_to_json(echoed) == j.at("config"));
}

#ifdef FRANSON_CLI_PATH

TEST_CASE("exit codes") {
  const std::string good =
      write_temp("good.json", sample_config_json().dump());
  CHECK(run_cli("rate --config " + good) == 0);
  CHECK(run_cli("levels --config " + good) == 0);
  CHECK(run_cli("sweep --config " + good) == 0);
  CHECK(run_cli("mc --config " + good) == 0);

  json bad_tau = sample_config_json();
  bad_tau["cascade"]["tau2"] = 500.0;  // breaks tau2 < tau1
  const std::string bad_tau_path =
      write_temp("bad_tau.json", bad_tau.dump());
  CHECK(run_cli("rate --config " + bad_tau_path) == 2);
  CHECK(run_cli("rate --override-validation --config " + bad_tau_path) == 0);

  CHECK(run_cli("rate --config /tmp/franson_no_such_file.json") == 3);

  const std::string not_json = write_temp("mangled.json", "{ not json");
  CHECK(run_cli("rate --config " + not_json) == 4);

  json unknown = sample_config_json();
  unknown["extra_section"] = 1;
  const std::string unknown_path =
      write_temp("unknown.json", unknown.dump());
  CHECK(run_cli("rate --config " + unknown_path) == 4);
}

TEST_CASE("CLI seed override lands in the output metadata") {
  const std::string good =
      write_temp("seed.json", sample_config_json().dump());
  const std::string out = "/tmp/franson_test_seed_out.json";
  const std::string cmd = std::string(FRANSON_CLI_PATH) + " mc --config " +
                          good + " --seed 777 --out " + out +
                          " >/dev/null 2>/dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  std::ifstream in(out);
  json j;
  in >> j;
  CHECK(j.at("meta").at("seed").get<std::uint64_t>() == 777);
  CHECK(j.at("payload").at("seed").get<std::uint64_t>() == 777);
  std::remove(out.c_str());
}

#endif  // FRANSON_CLI_PATH

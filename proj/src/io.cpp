#include "franson/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace franson::io {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Strict section reader: records unknown and missing keys instead of
// throwing piecemeal, so one error can list everything.
class KeyChecker {
 public:
  explicit KeyChecker(std::vector<std::string>& missing,
                      std::vector<std::string>& unknown)
      : missing_(missing), unknown_(unknown) {}

  // Returns the section object, or nullptr view when absent/not required.
  const json* section(const json& j, const std::string& name, bool required) {
    if (!j.contains(name)) {
      if (required) missing_.push_back(name);
      return nullptr;
    }
    if (!j.at(name).is_object()) {
      throw ConfigError("config section '" + name + "' must be an object");
    }
    return &j.at(name);
  }

  void check_keys(const json& obj, const std::string& section,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
    for (const auto& [key, _] : obj.items()) {
      if (!allowed.count(key)) unknown_.push_back(section + "." + key);
    }
    for (const auto& key : required) {
      if (!obj.contains(key)) missing_.push_back(section + "." + key);
    }
  }

 private:
  std::vector<std::string>& missing_;
  std::vector<std::string>& unknown_;
};

double get_num(const json& obj, const std::string& section,
               const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError("config key '" + section + "." + key +
                      "' must be a number");
  }
  return v.get<double>();
}

std::vector<std::complex<double>> get_complex_seq(const json& arr,
                                                  const std::string& what) {
  if (!arr.is_array()) {
    throw ConfigError("config key '" + what + "' must be an array of [re, im]");
  }
  std::vector<std::complex<double>> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw ConfigError("config key '" + what +
                        "' entries must be [re, im] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

json complex_seq_to_json(const std::vector<std::complex<double>>& seq) {
  json arr = json::array();
  for (const auto& v : seq) arr.push_back({v.real(), v.imag()});
  return arr;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json meta_for(const RunConfig& cfg, const std::string& subcommand) {
  json meta;
  meta["version"] = kVersion;
  meta["timestamp"] = iso_timestamp();
  meta["seed"] = cfg.mc.seed;
  meta["config_hash"] = config_hash(cfg);
  meta["subcommand"] = subcommand;
  return meta;
}

PhaseParams phase_params_of(const RunConfig& cfg) {
  const auto [de, dep] =
      cascade_deltas(cfg.system, cfg.levels, cfg.gup.deformation, cfg.units);
  return {de, dep, cfg.gup.beta, cfg.units.hbar};
}

double fringe_vis_of(const RunConfig& cfg) {
  return cfg.damping
             ? damping_visibility(cfg.ifc.delta_t, cfg.tau1, cfg.tau3)
             : 1.0;
}

McAxis axis_from_string(const std::string& axis) {
  if (axis == "phi1") return McAxis::Phi1;
  if (axis == "phi2") return McAxis::Phi2;
  if (axis == "delta_t") return McAxis::DeltaT;
  if (axis == "beta") return McAxis::Beta;
  throw ConfigError("sweep.axis must be one of phi1, phi2, delta_t, beta");
}

// Analytic rate at a given axis value.
double analytic_rate_at(const RunConfig& cfg, const PhaseParams& pp,
                        McAxis axis, double v, double beta_override,
                        bool use_override) {
  double phi1 = cfg.ifc.phi1, phi2 = cfg.ifc.phi2, dt = cfg.ifc.delta_t;
  double beta = use_override ? beta_override : pp.beta;
  switch (axis) {
    case McAxis::Phi1: phi1 = v; break;
    case McAxis::Phi2: phi2 = v; break;
    case McAxis::DeltaT: dt = v; break;
    case McAxis::Beta: beta = use_override ? beta_override : v; break;
  }
  return rate_gup(cfg.modes, beta, pp.delta_e, pp.delta_e_p, dt, phi1, phi2,
                  pp.hbar, fringe_vis_of(cfg));
}

json spectrum_to_json(const Spectrum& s, bool with_errors) {
  json pts = json::array();
  for (const auto& p : s.points) {
    json row;
    row["axis_value"] = p.axis_value;
    row["rate"] = p.rate;
    if (with_errors) row["std_error"] = p.std_error;
    pts.push_back(row);
  }
  json out;
  out["axis"] = s.axis_name;
  out["points"] = pts;
  return out;
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json ResultEnvelope::to_json() const {
  json j;
  j["config"] = config;
  j["meta"] = meta;
  j["payload"] = payload;
  j["validation"] = validation;
  return j;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  std::vector<std::string> missing, unknown;
  KeyChecker kc(missing, unknown);

  // Root-level keys.
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> allowed = {
        "system", "levels", "cascade", "interferometer", "gup",
        "modes",  "mc",     "sweep",   "chsh",           "units", "damping"};
    if (!allowed.count(key)) unknown.push_back(key);
  }

  RunConfig cfg;

  if (const json* sys = kc.section(j, "system", true)) {
    if (!sys->contains("type")) {
      missing.push_back("system.type");
    } else {
      const std::string type = sys->at("type").get<std::string>();
      if (type == "oscillator") {
        kc.check_keys(*sys, "system", {"type", "mass", "omega"},
                      {"mass", "omega"});
        if (missing.empty() && unknown.empty()) {
          HarmonicOscillator ho{get_num(*sys, "system", "mass"),
                                get_num(*sys, "system", "omega")};
          if (ho.mass <= 0.0 || ho.omega <= 0.0)
            throw ConfigError("system: mass and omega must be positive");
          cfg.system = ho;
        }
      } else if (type == "well") {
        kc.check_keys(*sys, "system", {"type", "mass", "width"},
                      {"mass", "width"});
        if (missing.empty() && unknown.empty()) {
          InfiniteWell well{get_num(*sys, "system", "mass"),
                            get_num(*sys, "system", "width")};
          if (well.mass <= 0.0 || well.width <= 0.0)
            throw ConfigError("system: mass and width must be positive");
          cfg.system = well;
        }
      } else {
        throw ConfigError("system.type must be 'oscillator' or 'well'");
      }
    }
  }

  if (const json* lv = kc.section(j, "levels", true)) {
    kc.check_keys(*lv, "levels", {"n1", "n2", "n3"}, {"n1", "n2", "n3"});
    if (lv->contains("n1") && lv->contains("n2") && lv->contains("n3")) {
      cfg.levels = {lv->at("n1").get<int>(), lv->at("n2").get<int>(),
                    lv->at("n3").get<int>()};
    }
  }

  if (const json* cas = kc.section(j, "cascade", true)) {
    kc.check_keys(*cas, "cascade", {"tau1", "tau2", "tau3"},
                  {"tau1", "tau2", "tau3"});
    if (cas->contains("tau1") && cas->contains("tau2") &&
        cas->contains("tau3")) {
      cfg.tau1 = get_num(*cas, "cascade", "tau1");
      cfg.tau2 = get_num(*cas, "cascade", "tau2");
      cfg.tau3 = get_num(*cas, "cascade", "tau3");
    }
  }

  if (const json* ifc = kc.section(j, "interferometer", true)) {
    kc.check_keys(*ifc, "interferometer",
                  {"delta_t", "phi1", "phi2", "eta1", "eta2", "window"},
                  {"delta_t", "window"});
    if (ifc->contains("delta_t") && ifc->contains("window")) {
      cfg.ifc.delta_t = get_num(*ifc, "interferometer", "delta_t");
      cfg.ifc.window = get_num(*ifc, "interferometer", "window");
      if (ifc->contains("phi1"))
        cfg.ifc.phi1 = get_num(*ifc, "interferometer", "phi1");
      if (ifc->contains("phi2"))
        cfg.ifc.phi2 = get_num(*ifc, "interferometer", "phi2");
      if (ifc->contains("eta1"))
        cfg.ifc.eta1 = get_num(*ifc, "interferometer", "eta1");
      if (ifc->contains("eta2"))
        cfg.ifc.eta2 = get_num(*ifc, "interferometer", "eta2");
    }
  }

  if (const json* gup = kc.section(j, "gup", true)) {
    kc.check_keys(*gup, "gup", {"beta", "deformation"}, {"beta"});
    if (gup->contains("beta")) {
      cfg.gup.beta = get_num(*gup, "gup", "beta");
      if (cfg.gup.beta < 0.0 || !std::isfinite(cfg.gup.beta))
        throw ConfigError("gup.beta must be finite and >= 0");
    }
    if (gup->contains("deformation")) {
      const std::string d = gup->at("deformation").get<std::string>();
      if (d == "quadratic_momentum") {
        cfg.gup.deformation = Deformation::QuadraticMomentum;
      } else if (d == "absolute_momentum") {
        cfg.gup.deformation = Deformation::AbsoluteMomentum;
      } else {
        throw ConfigError("gup.deformation: unknown tag '" + d + "'");
      }
    }
  }

  if (const json* modes = kc.section(j, "modes", true)) {
    kc.check_keys(*modes, "modes", {"c", "c_prime"}, {"c", "c_prime"});
    if (modes->contains("c") && modes->contains("c_prime")) {
      cfg.modes.c = get_complex_seq(modes->at("c"), "modes.c");
      cfg.modes.c_prime =
          get_complex_seq(modes->at("c_prime"), "modes.c_prime");
      if (cfg.modes.c.empty() || cfg.modes.c.size() != cfg.modes.c_prime.size())
        throw ConfigError("modes: c and c_prime must share a nonzero length");
    }
  }

  if (const json* mc = kc.section(j, "mc", false)) {
    kc.check_keys(*mc, "mc", {"n_pairs", "seed", "threads"}, {});
    if (mc->contains("n_pairs"))
      cfg.mc.n_pairs = mc->at("n_pairs").get<std::uint64_t>();
    if (mc->contains("seed")) cfg.mc.seed = mc->at("seed").get<std::uint64_t>();
    if (mc->contains("threads")) cfg.mc.threads = mc->at("threads").get<int>();
  }

  if (const json* sw = kc.section(j, "sweep", false)) {
    kc.check_keys(*sw, "sweep",
                  {"axis", "min", "max", "samples", "mode", "overlay_beta0"},
                  {"axis", "min", "max", "samples"});
    if (sw->contains("axis")) cfg.sweep.axis = sw->at("axis").get<std::string>();
    if (sw->contains("min")) cfg.sweep.min = get_num(*sw, "sweep", "min");
    if (sw->contains("max")) cfg.sweep.max = get_num(*sw, "sweep", "max");
    if (sw->contains("samples")) cfg.sweep.samples = sw->at("samples").get<int>();
    if (sw->contains("mode")) {
      cfg.sweep.mode = sw->at("mode").get<std::string>();
      if (cfg.sweep.mode != "analytic" && cfg.sweep.mode != "mc")
        throw ConfigError("sweep.mode must be 'analytic' or 'mc'");
    }
    if (sw->contains("overlay_beta0"))
      cfg.sweep.overlay_beta0 = sw->at("overlay_beta0").get<bool>();
  }

  if (const json* ch = kc.section(j, "chsh", false)) {
    kc.check_keys(*ch, "chsh", {"resolution", "refinement", "fixed"}, {});
    if (ch->contains("resolution"))
      cfg.chsh.resolution = ch->at("resolution").get<int>();
    if (ch->contains("refinement"))
      cfg.chsh.refinement = ch->at("refinement").get<int>();
    if (ch->contains("fixed")) {
      const auto& f = ch->at("fixed");
      if (!f.is_array() || f.size() != 4)
        throw ConfigError("chsh.fixed must be [a, a_prime, b, b_prime]");
      cfg.chsh.has_fixed = true;
      for (int i = 0; i < 4; ++i) cfg.chsh.fixed[i] = f[i].get<double>();
    }
  }

  if (const json* un = kc.section(j, "units", false)) {
    kc.check_keys(*un, "units", {"hbar"}, {});
    if (un->contains("hbar")) {
      cfg.units.hbar = get_num(*un, "units", "hbar");
      if (cfg.units.hbar <= 0.0) throw ConfigError("units.hbar must be > 0");
    }
  }

  if (j.contains("damping")) cfg.damping = j.at("damping").get<bool>();

  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }
  if (!missing.empty()) {
    std::string msg = "missing required config keys:";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }

  const int ground = ground_index(cfg.system);
  if (!(cfg.levels.n1 > cfg.levels.n2 && cfg.levels.n2 > cfg.levels.n3 &&
        cfg.levels.n3 >= ground)) {
    throw ConfigError("levels: require n1 > n2 > n3 >= " +
                      std::to_string(ground) + " for this system");
  }
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  if (const auto* ho = std::get_if<HarmonicOscillator>(&cfg.system)) {
    j["system"] = {{"type", "oscillator"}, {"mass", ho->mass}, {"omega", ho->omega}};
  } else {
    const auto& well = std::get<InfiniteWell>(cfg.system);
    j["system"] = {{"type", "well"}, {"mass", well.mass}, {"width", well.width}};
  }
  j["levels"] = {{"n1", cfg.levels.n1}, {"n2", cfg.levels.n2}, {"n3", cfg.levels.n3}};
  j["cascade"] = {{"tau1", cfg.tau1}, {"tau2", cfg.tau2}, {"tau3", cfg.tau3}};
  j["interferometer"] = {{"delta_t", cfg.ifc.delta_t}, {"phi1", cfg.ifc.phi1},
                         {"phi2", cfg.ifc.phi2},       {"eta1", cfg.ifc.eta1},
                         {"eta2", cfg.ifc.eta2},       {"window", cfg.ifc.window}};
  j["gup"] = {{"beta", cfg.gup.beta},
              {"deformation", cfg.gup.deformation == Deformation::QuadraticMomentum
                                  ? "quadratic_momentum"
                                  : "absolute_momentum"}};
  j["modes"] = {{"c", complex_seq_to_json(cfg.modes.c)},
                {"c_prime", complex_seq_to_json(cfg.modes.c_prime)}};
  j["mc"] = {{"n_pairs", cfg.mc.n_pairs}, {"seed", cfg.mc.seed},
             {"threads", cfg.mc.threads}};
  json sw = {{"axis", cfg.sweep.axis},       {"min", cfg.sweep.min},
             {"max", cfg.sweep.max},         {"samples", cfg.sweep.samples},
             {"mode", cfg.sweep.mode},       {"overlay_beta0", cfg.sweep.overlay_beta0}};
  j["sweep"] = sw;
  json ch = {{"resolution", cfg.chsh.resolution},
             {"refinement", cfg.chsh.refinement}};
  if (cfg.chsh.has_fixed) {
    ch["fixed"] = {cfg.chsh.fixed[0], cfg.chsh.fixed[1], cfg.chsh.fixed[2],
                   cfg.chsh.fixed[3]};
  }
  j["chsh"] = ch;
  j["units"] = {{"hbar", cfg.units.hbar}};
  j["damping"] = cfg.damping;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

CascadeSpec cascade_of(const RunConfig& cfg) {
  CascadeSpec cas;
  cas.e1 = unperturbed_energy(cfg.system, cfg.levels.n1, cfg.units);
  cas.e2 = unperturbed_energy(cfg.system, cfg.levels.n2, cfg.units);
  cas.e3 = unperturbed_energy(cfg.system, cfg.levels.n3, cfg.units);
  cas.tau1 = cfg.tau1;
  cas.tau2 = cfg.tau2;
  cas.tau3 = cfg.tau3;
  return cas;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string dump = config_to_json(cfg).dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
  auto report = validate_experiment(cascade_of(cfg), cfg.ifc).violations;
  const auto pp = phase_params_of(cfg);
  if (!perturbative_regime_ok(pp.beta, pp.delta_e, pp.delta_e_p)) {
    report.push_back(
        "warning: beta*delta_e_p/delta_e > 0.1, first order unreliable");
  }
  return report;
}

ResultEnvelope cmd_levels(const RunConfig& cfg) {
  ResultEnvelope env;
  env.config = config_to_json(cfg);
  env.meta = meta_for(cfg, "levels");
  env.validation = validate_config(cfg);

  json payload;
  for (const auto& [name, n] :
       {std::pair<const char*, int>{"level1", cfg.levels.n1},
        {"level2", cfg.levels.n2},
        {"level3", cfg.levels.n3}}) {
    payload[name] = {
        {"n", n},
        {"e", unperturbed_energy(cfg.system, n, cfg.units)},
        {"e_p", perturbation_energy(cfg.system, n, cfg.gup.deformation,
                                    cfg.units)}};
  }
  const auto pp = phase_params_of(cfg);
  payload["delta_e"] = pp.delta_e;
  payload["delta_e_p"] = pp.delta_e_p;
  env.payload = payload;
  return env;
}

ResultEnvelope cmd_rate(const RunConfig& cfg) {
  ResultEnvelope env;
  env.config = config_to_json(cfg);
  env.meta = meta_for(cfg, "rate");
  env.validation = validate_config(cfg);

  const auto pp = phase_params_of(cfg);
  const auto phase =
      total_phase(pp.delta_e, pp.delta_e_p, pp.beta, cfg.ifc.delta_t,
                  cfg.ifc.phi1, cfg.ifc.phi2, pp.hbar);
  json payload;
  payload["rate"] =
      rate_gup(cfg.modes, pp.beta, pp.delta_e, pp.delta_e_p, cfg.ifc.delta_t,
               cfg.ifc.phi1, cfg.ifc.phi2, pp.hbar, fringe_vis_of(cfg));
  payload["r0_gup"] = r0_gup(cfg.modes, pp.beta);
  payload["fringe_shift"] =
      fringe_shift(pp.beta, pp.delta_e_p, cfg.ifc.delta_t, pp.hbar);
  payload["phase"] = {{"phi1_prime", phase.phi1_prime},
                      {"phi2_prime", phase.phi2_prime},
                      {"total", phase.total}};
  env.payload = payload;
  return env;
}

ResultEnvelope cmd_sweep(const RunConfig& cfg) {
  ResultEnvelope env;
  env.config = config_to_json(cfg);
  env.meta = meta_for(cfg, "sweep");
  env.validation = validate_config(cfg);

  if (cfg.sweep.samples < 2) throw ConfigError("sweep.samples must be >= 2");
  const McAxis axis = axis_from_string(cfg.sweep.axis);
  const auto pp = phase_params_of(cfg);

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(cfg.sweep.samples));
  if (!(cfg.sweep.max > cfg.sweep.min)) throw ConfigError("sweep: empty range");
  for (int i = 0; i < cfg.sweep.samples; ++i) {
    values.push_back(cfg.sweep.min +
                     (cfg.sweep.max - cfg.sweep.min) * i / cfg.sweep.samples);
  }

  const bool is_mc = cfg.sweep.mode == "mc";
  Spectrum spec;
  if (is_mc) {
    spec = mc_spectrum(axis, values, cfg.mc.n_pairs, cascade_of(cfg), cfg.ifc,
                       pp, cfg.modes, cfg.mc.seed, cfg.mc.threads);
  } else {
    spec.axis_name = cfg.sweep.axis;
    for (double v : values) {
      spec.points.push_back(
          {v, analytic_rate_at(cfg, pp, axis, v, 0.0, false), 0.0});
    }
  }

  json payload = spectrum_to_json(spec, is_mc);
  if (cfg.sweep.overlay_beta0) {
    json& pts = payload["points"];
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
      pts[i]["rate_beta0"] = analytic_rate_at(
          cfg, pp, axis, spec.points[i].axis_value, 0.0, true);
    }
  }
  payload["mode"] = cfg.sweep.mode;
  env.payload = payload;
  return env;
}

ResultEnvelope cmd_mc(const RunConfig& cfg) {
  ResultEnvelope env;
  env.config = config_to_json(cfg);
  env.meta = meta_for(cfg, "mc");
  env.validation = validate_config(cfg);

  const auto pp = phase_params_of(cfg);
  const CountRecord rec =
      simulate_pairs(cfg.mc.n_pairs, cascade_of(cfg), cfg.ifc, pp, cfg.modes,
                     cfg.mc.seed, cfg.mc.threads);
  json payload;
  payload["n_pairs"] = rec.n_pairs;
  payload["n_coincident"] = rec.n_coincident;
  payload["n_accidental"] = rec.n_accidental;
  payload["n_cross_rejected"] = rec.n_cross_rejected;
  payload["n_singles"] = rec.n_singles;
  payload["rate_estimate"] = rec.rate_estimate;
  payload["std_error"] = rec.std_error;
  payload["accidental_fraction"] = accidental_fraction(rec);
  payload["seed"] = rec.seed;
  env.payload = payload;
  return env;
}

ResultEnvelope cmd_chsh(const RunConfig& cfg) {
  ResultEnvelope env;
  env.config = config_to_json(cfg);
  env.meta = meta_for(cfg, "chsh");
  env.validation = validate_config(cfg);

  const auto pp = phase_params_of(cfg);
  const double vis = fringe_vis_of(cfg);
  RateFn rate = [&cfg, pp, vis](double a, double b) {
    return rate_gup(cfg.modes, pp.beta, pp.delta_e, pp.delta_e_p,
                    cfg.ifc.delta_t, a, b, pp.hbar, vis);
  };

  const ChshResult res =
      cfg.chsh.has_fixed
          ? chsh(rate, cfg.chsh.fixed[0], cfg.chsh.fixed[1], cfg.chsh.fixed[2],
                 cfg.chsh.fixed[3])
          : max_chsh(rate, cfg.chsh.resolution, cfg.chsh.refinement);

  json payload;
  payload["s_value"] = res.s_value;
  payload["settings"] = {res.settings[0], res.settings[1], res.settings[2],
                         res.settings[3]};
  payload["correlations"] = {res.correlations[0], res.correlations[1],
                             res.correlations[2], res.correlations[3]};
  payload["mode"] = cfg.chsh.has_fixed ? "fixed" : "max";
  env.payload = payload;
  return env;
}

std::string envelope_to_csv(const ResultEnvelope& env) {
  std::ostringstream os;
  os << "# version=" << env.meta.at("version").get<std::string>() << "\n";
  os << "# config_hash=" << env.meta.at("config_hash").get<std::string>() << "\n";
  os << "# seed=" << env.meta.at("seed").get<std::uint64_t>() << "\n";
  os << "# subcommand=" << env.meta.at("subcommand").get<std::string>() << "\n";
  for (const auto& v : env.validation) os << "# validation: " << v << "\n";

  const std::string sub = env.meta.at("subcommand").get<std::string>();
  if (sub == "sweep") {
    const json& pts = env.payload.at("points");
    const bool overlay = !pts.empty() && pts[0].contains("rate_beta0");
    const bool errors = !pts.empty() && pts[0].contains("std_error");
    os << "axis_name,axis_value,rate";
    if (overlay) os << ",rate_beta0";
    if (errors) os << ",std_error";
    os << "\n";
    const std::string axis = env.payload.at("axis").get<std::string>();
    for (const auto& p : pts) {
      os << axis << "," << fmt17(p.at("axis_value").get<double>()) << ","
         << fmt17(p.at("rate").get<double>());
      if (overlay) os << "," << fmt17(p.at("rate_beta0").get<double>());
      if (errors) os << "," << fmt17(p.at("std_error").get<double>());
      os << "\n";
    }
    return os.str();
  }
  if (sub == "mc") {
    os << "n_pairs,n_coincident,n_accidental,n_cross_rejected,n_singles,"
          "rate_estimate,std_error,accidental_fraction,seed\n";
    const json& p = env.payload;
    os << p.at("n_pairs").get<std::uint64_t>() << ","
       << p.at("n_coincident").get<std::uint64_t>() << ","
       << p.at("n_accidental").get<std::uint64_t>() << ","
       << p.at("n_cross_rejected").get<std::uint64_t>() << ","
       << p.at("n_singles").get<std::uint64_t>() << ","
       << fmt17(p.at("rate_estimate").get<double>()) << ","
       << fmt17(p.at("std_error").get<double>()) << ","
       << fmt17(p.at("accidental_fraction").get<double>()) << ","
       << p.at("seed").get<std::uint64_t>() << "\n";
    return os.str();
  }
  throw ConfigError("csv format only supports the sweep and mc subcommands");
}

void write_envelope(const ResultEnvelope& env, const std::string& path,
                    const std::string& format) {
  std::string text;
  if (format == "json") {
    text = env.to_json().dump(2);
    text += "\n";
  } else if (format == "csv") {
    text = envelope_to_csv(env);
  } else {
    throw ConfigError("format must be 'csv' or 'json'");
  }

  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace franson::io

#include "franson/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace franson {

namespace {

bool all_finite(std::initializer_list<double> vs) {
  for (double v : vs) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

ValidationReport validate_experiment(const CascadeSpec& cascade,
                                     const InterferometerConfig& ifc,
                                     double hierarchy_min,
                                     double hierarchy_margin) {
  if (!all_finite({cascade.e1, cascade.e2, cascade.e3, cascade.tau1,
                   cascade.tau2, cascade.tau3, ifc.delta_t, ifc.phi1, ifc.phi2,
                   ifc.eta1, ifc.eta2, ifc.window, hierarchy_min,
                   hierarchy_margin})) {
    throw std::invalid_argument("validate_experiment: non-finite input");
  }
  if (hierarchy_min <= 0.0 || hierarchy_margin <= 0.0) {
    throw std::invalid_argument(
        "validate_experiment: margins must be positive");
  }

  ValidationReport report;
  auto add = [&report](const std::string& msg) {
    report.violations.push_back(msg);
  };

  if (!(cascade.e1 > cascade.e2 && cascade.e2 > cascade.e3))
    add("energy ordering violated: requires e1 > e2 > e3");
  if (!(cascade.tau1 > 0.0 && cascade.tau2 > 0.0 && cascade.tau3 > 0.0))
    add("lifetimes must be strictly positive");
  if (!(cascade.tau2 < cascade.tau1))
    add("lifetime ordering violated: requires tau2 < tau1");
  if (!(cascade.tau1 < cascade.tau3))
    add("lifetime ordering violated: requires tau1 < tau3");
  if (cascade.tau2 > 0.0 && cascade.tau1 / cascade.tau2 < hierarchy_min) {
    std::ostringstream os;
    os << "tau1/tau2 below hierarchy_min (" << cascade.tau1 / cascade.tau2
       << " < " << hierarchy_min << ")";
    add(os.str());
  }
  if (!(ifc.delta_t > 0.0)) add("delta_t must be strictly positive");
  if (!(ifc.window > 0.0)) add("window must be strictly positive");
  if (ifc.delta_t < hierarchy_margin * cascade.tau2)
    add("delta_t not above margin*tau2");
  if (ifc.delta_t > cascade.tau1 / hierarchy_margin)
    add("delta_t exceeds tau1/margin");
  if (ifc.window >= ifc.delta_t) add("window not smaller than delta_t");
  if (ifc.eta1 < 0.0 || ifc.eta1 > 1.0)
    add("eta1 outside [0,1]");
  if (ifc.eta2 < 0.0 || ifc.eta2 > 1.0)
    add("eta2 outside [0,1]");

  return report;
}

bool perturbative_regime_ok(double beta, double delta_e, double delta_e_p) {
  if (delta_e == 0.0) return beta == 0.0 || delta_e_p == 0.0;
  return beta * std::abs(delta_e_p) / std::abs(delta_e) <= 0.1;
}

}  // namespace franson

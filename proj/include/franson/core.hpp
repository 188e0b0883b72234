#pragma once

#include <complex>
#include <string>
#include <vector>

namespace franson {

/// Unit conventions. Internally everything runs in natural units (hbar = 1);
/// SI-style inputs can be rescaled at the boundary through this knob.
struct UnitSystem {
  double hbar = 1.0;
};

/// Three-level cascade emitter: E1 > E2 > E3 with lifetimes tau1, tau2, tau3.
/// The intermediate level must be short-lived (tau2 << tau1) and the ground
/// state long-lived (tau1 < tau3).
struct CascadeSpec {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
};

/// Unbalanced-interferometer geometry shared by both photons.
struct InterferometerConfig {
  double delta_t = 0.0;  ///< long-short transit-time difference
  double phi1 = 0.0;     ///< phase setting at detector 1 (radians)
  double phi2 = 0.0;     ///< phase setting at detector 2 (radians)
  double eta1 = 1.0;     ///< detector 1 efficiency in [0,1]
  double eta2 = 1.0;     ///< detector 2 efficiency in [0,1]
  double window = 0.0;   ///< coincidence window, must satisfy window < delta_t
};

/// Momentum-deformation choice f(p) in P = p(1 + beta f(p)).
enum class Deformation {
  QuadraticMomentum,  ///< f(p) = p^2, the standard minimal-length deformation
  AbsoluteMomentum,   ///< f(p) = |p|, reserved; not implemented
};

/// Minimal-length deformation strength and shape.
struct GupParams {
  double beta = 0.0;
  Deformation deformation = Deformation::QuadraticMomentum;
};

/// Finite Fourier coefficient sequences: c_k for the unperturbed fields and
/// c'_k for their first-order corrections. Both sequences share one length.
struct ModeCoefficients {
  std::vector<std::complex<double>> c;
  std::vector<std::complex<double>> c_prime;
};

/// One entry per violated configuration inequality; empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks the timing hierarchy tau2 << delta_t << tau1 (operationalized with
/// a margin factor), the lifetime and energy orderings, the efficiency
/// ranges, and window < delta_t. Violations are reported, not thrown, so the
/// breakdown regime stays explorable. Non-finite inputs are rejected.
ValidationReport validate_experiment(const CascadeSpec& cascade,
                                     const InterferometerConfig& ifc,
                                     double hierarchy_min = 100.0,
                                     double hierarchy_margin = 10.0);

/// True when the first-order treatment is trustworthy: beta*|dE_p|/dE <= 0.1.
bool perturbative_regime_ok(double beta, double delta_e, double delta_e_p);

}  // namespace franson
